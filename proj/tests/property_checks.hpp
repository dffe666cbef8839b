// Randomized invariant checks shared by test_properties and the acceptance suite.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "salp/algorithms.hpp"
#include "salp/stats.hpp"

namespace salp::checks {

struct Outcome {
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && instances > 0; }
    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

inline double ulp_of(double v) { return std::nextafter(std::abs(v), INFINITY) - std::abs(v); }

inline Position random_position(RngStream& rng, std::size_t d, double scale) {
    Position p(d);
    for (auto& x : p) x = (2.0 * rng.uniform() - 1.0) * scale;
    return p;
}

inline Bounds random_bounds(RngStream& rng, std::size_t d, double scale) {
    Position lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        lo[j] = (2.0 * rng.uniform() - 1.0) * scale;
        hi[j] = lo[j] + 0.01 + rng.uniform() * scale;
    }
    return Bounds(lo, hi);
}

/// clip(clip(x)) == clip(x) and clip(x + s, B + s) ~= clip(x, B) + s (4 ulps).
inline Outcome clip_invariants(std::size_t instances, std::uint64_t seed) {
    RngStream rng(seed);
    Outcome out;
    for (std::size_t k = 0; k < instances; ++k) {
        ++out.instances;
        const std::size_t d = 1 + rng.uniform_index(6);
        const Bounds b = random_bounds(rng, d, 100.0);
        const Position x = random_position(rng, d, 300.0);
        const Position once = clip(x, b);
        if (clip(once, b) != once) out.fail("clip not idempotent");
        if (!b.contains(once)) out.fail("clip result outside bounds");

        const double s_mag = std::pow(10.0, 6.0 * rng.uniform());
        const Position s(d, rng.uniform() < 0.5 ? -s_mag : s_mag);
        Position xs(d);
        for (std::size_t j = 0; j < d; ++j) xs[j] = x[j] + s[j];
        const Position lhs = clip(xs, b.translated(s));
        for (std::size_t j = 0; j < d; ++j) {
            const double rhs = once[j] + s[j];
            const double tol = 4.0 * ulp_of(std::max(std::abs(rhs), std::abs(s[j])));
            if (std::abs(lhs[j] - rhs) > tol) {
                std::ostringstream os;
                os << "clip not shift-equivariant: |" << lhs[j] << " - " << rhs << "| > " << tol;
                out.fail(os.str());
            }
        }
    }
    return out;
}

/// N(L+1) objective calls for population methods, N*L for random search.
inline Outcome budget_accounting(std::size_t instances, std::uint64_t seed) {
    RngStream rng(seed);
    Outcome out;
    const auto& ids = algorithm_ids();
    for (std::size_t k = 0; k < instances; ++k) {
        ++out.instances;
        const std::string id = ids[k % ids.size()];
        RunOptions opts;
        opts.population_size = 4 + rng.uniform_index(30);
        opts.iterations = 1 + rng.uniform_index(30);
        const std::size_t d = 2 + rng.uniform_index(4);
        auto counter = std::make_shared<std::atomic<std::size_t>>(0);
        const auto f = objectives::counted(objectives::make_objective("sphere", d), counter);
        run(id, f, opts, rng.next_u64());
        const std::size_t n = opts.population_size, l = opts.iterations;
        const std::size_t expected = id == "rs" ? n * l : n * (l + 1);
        if (counter->load() != expected)
            out.fail(id + ": " + std::to_string(counter->load()) + " evaluations, expected " + std::to_string(expected));
    }
    return out;
}

/// best_per_iteration is non-increasing for every algorithm.
inline Outcome monotone_best(std::size_t instances, std::uint64_t seed) {
    RngStream rng(seed);
    Outcome out;
    const auto& ids = algorithm_ids();
    const char* names[] = {"sphere", "rosenbrock", "ackley", "alpine", "rastrigin", "random"};
    for (std::size_t k = 0; k < instances; ++k) {
        ++out.instances;
        const std::string id = ids[k % ids.size()];
        const std::string name = names[rng.uniform_index(6)];
        RunOptions opts;
        opts.population_size = 4 + rng.uniform_index(20);
        opts.iterations = 5 + rng.uniform_index(40);
        auto f = objectives::make_objective(name, 2 + rng.uniform_index(3), rng.next_u64());
        if (rng.uniform() < 0.5) f = objectives::shifted(f, 1e3 * rng.uniform());
        const auto t = run(id, f, opts, rng.next_u64());
        if (!std::is_sorted(t.best_per_iteration.rbegin(), t.best_per_iteration.rend()))
            out.fail(id + " on " + name + ": best-so-far increased");
        if (t.best_per_iteration.back() != *t.final_best.fitness) out.fail(id + ": final best disagrees with trace");
    }
    return out;
}

/// c1 strictly decreasing over 0..L and inside (0, 2].
inline Outcome c1_monotone(std::size_t instances, std::uint64_t seed) {
    RngStream rng(seed);
    Outcome out;
    for (std::size_t k = 0; k < instances; ++k) {
        ++out.instances;
        const std::size_t total = 1 + rng.uniform_index(500);
        double prev = INFINITY;
        for (std::size_t l = 0; l <= total; ++l) {
            const double c = c1_coefficient(l, total);
            if (!(c > 0.0 && c <= 2.0)) out.fail("c1 out of (0, 2] at L=" + std::to_string(total));
            if (!(c < prev)) out.fail("c1 not strictly decreasing at L=" + std::to_string(total));
            prev = c;
        }
    }
    return out;
}

/// With c3 threshold 0 every coordinate takes the "+" branch.
inline Outcome c3_zero_branch_dead(std::size_t instances, std::uint64_t seed) {
    RngStream rng(seed);
    Outcome out;
    for (std::size_t k = 0; k < instances; ++k) {
        ++out.instances;
        const std::size_t d = 1 + rng.uniform_index(5);
        const Bounds b = random_bounds(rng, d, 50.0);
        Position food(d);
        for (std::size_t j = 0; j < d; ++j) food[j] = b.lower(j) + rng.uniform() * b.width(j);
        const double c1 = 2.0 * rng.uniform();
        const bool amended = rng.uniform() < 0.5;
        const std::uint64_t s = rng.next_u64();
        RngStream draw(s), replay(s);
        const Position got = amended ? leader_update_amended(food, b, c1, draw, 0.0)
                                     : leader_update_published(food, b, c1, draw, 0.0);
        for (std::size_t j = 0; j < d; ++j) {
            const double c2 = replay.uniform();
            replay.uniform();
            const double plus = amended ? leader_move_amended(food[j], b.lower(j), b.upper(j), c1, c2, true)
                                        : leader_move_published(food[j], b.lower(j), b.upper(j), c1, c2, true);
            if (got[j] != plus) out.fail("minus branch fired with threshold 0");
        }
    }
    return out;
}

/// U(a, b) + U(b, a) == n m, including tied samples.
inline Outcome u_complement(std::size_t instances, std::uint64_t seed) {
    RngStream rng(seed);
    Outcome out;
    for (std::size_t k = 0; k < instances; ++k) {
        ++out.instances;
        stats::SampleSet a{{}, "a"}, b{{}, "b"};
        const std::size_t n = 2 + rng.uniform_index(30), m = 2 + rng.uniform_index(30);
        const bool ties = rng.uniform() < 0.5;
        for (std::size_t i = 0; i < n; ++i) a.values.push_back(ties ? double(rng.uniform_index(5)) : rng.uniform());
        for (std::size_t i = 0; i < m; ++i) b.values.push_back(ties ? double(rng.uniform_index(5)) : rng.uniform());
        const auto ab = stats::mann_whitney_u(a, b);
        const auto ba = stats::mann_whitney_u(b, a);
        if (ab.u + ba.u != static_cast<double>(n * m)) out.fail("U + U' != n m");
        if (std::abs(ab.p - ba.p) > 1e-12) out.fail("p not symmetric under swap");
    }
    return out;
}

} // namespace salp::checks
