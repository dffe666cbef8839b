#include "salp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace salp::stats {

void SampleSet::validate() const {
    if (values.size() < 2) throw ConfigError("sample '" + label + "' needs at least 2 values");
    for (double v : values)
        if (!std::isfinite(v)) throw ConfigError("sample '" + label + "' contains a non-finite value");
}

std::string_view to_string(Significance s) {
    switch (s) {
    case Significance::four_stars: return "****";
    case Significance::three_stars: return "***";
    case Significance::two_stars: return "**";
    case Significance::one_star: return "*";
    case Significance::ns: return "ns";
    }
    return "ns";
}

std::vector<double> abf(std::span<const RunTrace> traces) {
    if (traces.empty()) throw ShapeError("abf: no traces");
    const auto& first = traces.front();
    std::vector<double> mean(first.best_per_iteration.size(), 0.0);
    for (const auto& t : traces) {
        if (t.best_per_iteration.size() != mean.size())
            throw ShapeError("abf: trace lengths differ (" + std::to_string(t.best_per_iteration.size()) + " vs " +
                             std::to_string(mean.size()) + ")");
        if (t.algorithm_id != first.algorithm_id || t.objective_id != first.objective_id)
            throw ShapeError("abf: traces mix algorithms or objectives");
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += t.best_per_iteration[i];
    }
    const double n = static_cast<double>(traces.size());
    for (double& v : mean) v /= n;
    return mean;
}

namespace {

/// Number of rank splits yielding each U value, index = U.
std::vector<double> u_frequencies(std::size_t n, std::size_t m) {
    // freq[j] holds the distribution for (i, j); U grows by j when the
    // largest element comes from the first sample.
    std::vector<std::vector<double>> freq(m + 1, std::vector<double>{1.0});
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::vector<double>> next(m + 1);
        next[0] = {1.0};
        for (std::size_t j = 1; j <= m; ++j) {
            std::vector<double> f(i * j + 1, 0.0);
            const auto& from_a = freq[j];  // (i-1, j), shifted by j
            const auto& from_b = next[j - 1];  // (i, j-1)
            for (std::size_t u = 0; u < from_a.size(); ++u) f[u + j] += from_a[u];
            for (std::size_t u = 0; u < from_b.size(); ++u) f[u] += from_b[u];
            next[j] = std::move(f);
        }
        freq = std::move(next);
    }
    return freq[m];
}

} // namespace

double mann_whitney_exact_p(double u, std::size_t n, std::size_t m) {
    const auto freq = u_frequencies(n, m);
    const double total = std::accumulate(freq.begin(), freq.end(), 0.0);
    double lower = 0.0, upper = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k) {
        const double kv = static_cast<double>(k);
        if (kv <= u + 1e-9) lower += freq[k];
        if (kv >= u - 1e-9) upper += freq[k];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

double mann_whitney_normal_p(double u, std::size_t n, std::size_t m, double tie_term) {
    const double nd = static_cast<double>(n), md = static_cast<double>(m);
    const double total = nd + md;
    const double mu = nd * md / 2.0;
    const double var = nd * md / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if (!(var > 0.0)) return 1.0;
    const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

MannWhitneyResult mann_whitney_u(const SampleSet& a, const SampleSet& b) {
    a.validate();
    b.validate();
    const std::size_t n = a.values.size(), m = b.values.size();

    struct Obs {
        double value;
        bool first;
    };
    std::vector<Obs> pooled;
    pooled.reserve(n + m);
    for (double v : a.values) pooled.push_back({v, true});
    for (double v : b.values) pooled.push_back({v, false});
    std::stable_sort(pooled.begin(), pooled.end(), [](const Obs& x, const Obs& y) { return x.value < y.value; });

    double rank_sum_a = 0.0, tie_term = 0.0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t k = i;
        while (k < pooled.size() && pooled[k].value == pooled[i].value) ++k;
        const double t = static_cast<double>(k - i);
        const double midrank = 0.5 * static_cast<double>(i + 1 + k);  // mean of ranks i+1..k
        for (std::size_t r = i; r < k; ++r)
            if (pooled[r].first) rank_sum_a += midrank;
        tie_term += t * t * t - t;
        i = k;
    }

    MannWhitneyResult res;
    res.u = rank_sum_a - static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    if (tie_term == 0.0 && std::min(n, m) <= 10) {
        res.exact = true;
        res.p = mann_whitney_exact_p(res.u, n, m);
    } else {
        res.p = mann_whitney_normal_p(res.u, n, m, tie_term);
    }
    return res;
}

double bonferroni(double p, std::size_t m) {
    if (m < 1) throw ConfigError("bonferroni: m must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("bonferroni: p must lie in [0, 1]");
    return std::min(1.0, static_cast<double>(m) * p);
}

Significance significance_class(double p) {
    if (p <= 0.0001) return Significance::four_stars;
    if (p <= 0.001) return Significance::three_stars;
    if (p <= 0.01) return Significance::two_stars;
    if (p <= 0.05) return Significance::one_star;
    return Significance::ns;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ShapeError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

PairComparison ComparisonReport::find(std::string_view a, std::string_view b) const {
    for (const auto& p : pairs) {
        if (p.a == a && p.b == b) return p;
        if (p.a == b && p.b == a) {
            PairComparison flipped = p;
            std::swap(flipped.a, flipped.b);
            std::swap(flipped.median_a, flipped.median_b);
            std::swap(flipped.n_a, flipped.n_b);
            flipped.u = static_cast<double>(p.n_a * p.n_b) - p.u;
            return flipped;
        }
    }
    throw ConfigError("no comparison between '" + std::string(a) + "' and '" + std::string(b) + "'");
}

ComparisonReport compare(std::string objective, std::span<const SampleSet> samples, std::size_t correction_factor) {
    ComparisonReport report;
    report.objective = std::move(objective);
    const std::size_t k = samples.size();
    const std::size_t pairs = k * (k - (k ? 1 : 0)) / 2;
    report.correction_factor = correction_factor ? correction_factor : std::max<std::size_t>(pairs, 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto res = mann_whitney_u(samples[i], samples[j]);
            PairComparison pc;
            pc.a = samples[i].label;
            pc.b = samples[j].label;
            pc.u = res.u;
            pc.p_raw = res.p;
            pc.p_adjusted = bonferroni(res.p, report.correction_factor);
            pc.significance = significance_class(pc.p_adjusted);
            pc.exact = res.exact;
            pc.median_a = median(samples[i].values);
            pc.median_b = median(samples[j].values);
            pc.n_a = samples[i].values.size();
            pc.n_b = samples[j].values.size();
            report.pairs.push_back(std::move(pc));
        }
    }
    return report;
}

} // namespace salp::stats
