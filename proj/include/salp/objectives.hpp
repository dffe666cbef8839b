#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "salp/core.hpp"

namespace salp::objectives {

using Evaluator = std::function<double(std::span<const double>)>;

/// A named objective over a (possibly translated) box.
///
/// `base` is expressed in the unshifted frame; operator() evaluates
/// base(x - shift), and bounds() returns base_bounds + shift.
struct ObjectiveSpec {
    std::string name;
    std::size_t dimension = 0;
    Bounds base_bounds;
    Position shift;  // length D, all zero when unshifted
    Evaluator base;

    Bounds bounds() const { return base_bounds.translated(shift); }
    bool is_shifted() const;
    double operator()(std::span<const double> x) const;
};

double sphere(std::span<const double> x);
double rosenbrock(std::span<const double> x);  // throws DimensionError for D < 2
double ackley(std::span<const double> x);
double alpine(std::span<const double> x);
double rastrigin(std::span<const double> x);

/// Uniform draw in [0, 1) that ignores x.
double random_fitness(std::span<const double> x, RngStream& rng);

/// x -> base(x - s) over base_bounds + s. Shifts compose additively.
ObjectiveSpec shifted(const ObjectiveSpec& spec, std::span<const double> s);

/// Broadcast a scalar shift to every coordinate.
ObjectiveSpec shifted(const ObjectiveSpec& spec, double s);

/// Wraps the evaluator so every call increments `counter`.
ObjectiveSpec counted(const ObjectiveSpec& spec, std::shared_ptr<std::atomic<std::size_t>> counter);

/// Builds a fresh objective instance.  `seed` is only consumed by stochastic
/// objectives (random_fitness), which own a private stream per instance.
using Factory = std::function<ObjectiveSpec(std::size_t dimension, std::uint64_t seed)>;

/// Registry lookup; throws ConfigError naming `name` if unknown.
/// Built-ins: sphere, rosenbrock, ackley, alpine, rastrigin, random.
ObjectiveSpec make_objective(const std::string& name, std::size_t dimension, std::uint64_t seed = 0);

bool is_registered(const std::string& name);
std::vector<std::string> registered_names();

/// Extension point for externally defined objectives (e.g. data-driven suites).
/// Replaces an existing entry of the same name.
void register_objective(const std::string& name, Factory factory);

} // namespace salp::objectives
