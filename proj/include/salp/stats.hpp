#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salp/core.hpp"

namespace salp::stats {

/// Final best fitnesses of one algorithm over its repetitions.
struct SampleSet {
    std::vector<double> values;
    std::string label;

    /// Requires >= 2 finite values; throws ConfigError otherwise.
    void validate() const;
};

enum class Significance { four_stars, three_stars, two_stars, one_star, ns };

std::string_view to_string(Significance s);

struct MannWhitneyResult {
    double u = 0.0;  // U of the first sample: #(a > b) + 0.5 #(a == b)
    double p = 1.0;  // two-sided
    bool exact = false;
};

/// Element-wise mean of best_per_iteration across traces.  Throws
/// ShapeError on mixed lengths or mixed (algorithm, objective) ids.
std::vector<double> abf(std::span<const RunTrace> traces);

/// Two-sided Mann-Whitney U test using midranks.  Exact null distribution
/// when min(n, m) <= 10 and there are no ties, otherwise the normal
/// approximation with tie-corrected variance and 0.5 continuity correction.
MannWhitneyResult mann_whitney_u(const SampleSet& a, const SampleSet& b);

/// Exact two-sided p for a tie-free U statistic with sample sizes n, m.
double mann_whitney_exact_p(double u, std::size_t n, std::size_t m);

/// Normal-approximation two-sided p.  `tie_term` is sum(t^3 - t) over tie groups.
double mann_whitney_normal_p(double u, std::size_t n, std::size_t m, double tie_term = 0.0);

double bonferroni(double p, std::size_t m);

Significance significance_class(double p_adjusted);

/// Linear-interpolation quantile (q in [0,1]) of an unsorted sample.
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

struct PairComparison {
    std::string a;
    std::string b;
    double u = 0.0;
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    Significance significance = Significance::ns;
    bool exact = false;
    double median_a = 0.0;
    double median_b = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

struct ComparisonReport {
    std::string objective;
    std::size_t correction_factor = 1;  // m used for Bonferroni
    std::vector<PairComparison> pairs;

    /// Pair for (a, b) in either order, oriented so that .a == a.
    PairComparison find(std::string_view a, std::string_view b) const;
};

/// All C(k, 2) pairwise tests among `samples`, in input order.  The
/// Bonferroni factor defaults to the number of pairs.
ComparisonReport compare(std::string objective, std::span<const SampleSet> samples, std::size_t correction_factor = 0);

} // namespace salp::stats
