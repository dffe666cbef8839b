#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "salp/algorithms.hpp"
#include "salp/core.hpp"
#include "salp/objectives.hpp"
#include "salp/stats.hpp"

namespace salp::harness {

/// One objective row of an experiment: registry name, dimension and shift.
/// An empty shift means unshifted; a single value is broadcast.
struct ObjectiveEntry {
    std::string name;
    std::size_t dimension = 2;
    Position shift;

    /// Unique, filesystem-safe identifier, e.g. "sphere_d2_s1e+09".
    std::string label() const;
    objectives::ObjectiveSpec build(std::uint64_t seed) const;
};

struct ExperimentConfig {
    std::vector<std::string> algorithms;
    std::vector<ObjectiveEntry> objectives;
    std::size_t population_size = 50;
    std::size_t iterations = 100;
    std::size_t repetitions = 30;
    std::uint64_t base_seed = 1;
    bool snapshot = false;
    double de_weight = 0.3;
    double de_crossover_rate = 0.5;

    /// Throws ConfigError naming the offending field or id.
    void validate() const;
    RunOptions run_options() const;
    std::uint64_t seed_for(std::size_t repetition) const { return base_seed + repetition; }
};

/// Seed of the private stream owned by a stochastic objective instance.
std::uint64_t objective_seed(std::uint64_t run_seed);

struct Cell {
    std::string algorithm;
    std::string objective;  // ObjectiveEntry::label()
    std::vector<RunTrace> traces;
    std::vector<std::size_t> evaluations;  // objective calls per trace
    std::vector<double> abf;
    stats::SampleSet finals;
};

struct ResultSet {
    ExperimentConfig config;
    std::vector<Cell> cells;  // objective-major, algorithms in config order

    const Cell& cell(const std::string& algorithm, const std::string& objective) const;
    std::vector<const Cell*> cells_for(const std::string& objective) const;
};

/// One repetition of one cell, exactly as run_experiment performs it.
RunTrace run_repetition(const ExperimentConfig& cfg, const std::string& algorithm, std::size_t objective_index,
                        std::size_t repetition, std::size_t* evaluations = nullptr);

/// Repetitions run in parallel (OpenMP) with one private stream each.
ResultSet run_experiment(const ExperimentConfig& cfg);

/// Sequential reference; bit-identical to run_experiment.
ResultSet run_experiment_serial(const ExperimentConfig& cfg);

/// Pairwise Mann-Whitney comparison of the final bests for one objective.
stats::ComparisonReport compare_objective(const ResultSet& results, const std::string& objective,
                                          std::size_t correction_factor = 0);

struct ShiftProbeReport {
    std::string algorithm;
    std::string objective;
    double shift = 0.0;
    std::uint64_t seed = 0;
    double max_deviation = 0.0;  // over all iterations, members, coordinates
    double base_final = 0.0;
    double shifted_final = 0.0;
    std::vector<double> deviation_per_iteration;  // index 0 = initial positions
};

/// Runs the algorithm on f and on f shifted by s with the same seed and
/// compares trajectories after subtracting s.
ShiftProbeReport shift_invariance_probe(const std::string& algorithm, const std::string& objective_name, double shift,
                                        std::uint64_t seed, std::size_t dimension = 2, std::size_t population = 50,
                                        std::size_t iterations = 100);

struct DynamicsResult {
    std::string preset;
    Bounds bounds;
    std::uint64_t seed = 0;
    std::size_t leader_index = 0;
    Snapshot initial;
    std::vector<Snapshot> snapshots;  // first T iterations
    Snapshot final_positions;          // after all L iterations
    double final_centroid_norm = 0.0;
    double final_leader_max_abs = 0.0;
};

/// Runs an SSO preset on random_fitness over symmetric bounds; throws
/// ConfigError when lower != -upper.
DynamicsResult dynamics_probe(const std::string& preset, const Bounds& bounds, std::size_t recorded_iterations,
                              std::uint64_t seed, std::size_t population = 50, std::size_t iterations = 100);

struct BounceResult {
    double k = 0.0;
    std::string preset;
    std::uint64_t seed = 0;
    LeaderStats stats;
    double fraction() const { return stats.outside_fraction(); }
};

/// Fraction of pre-clip leader coordinates outside [10^k, 10^k + 1]^D on the sphere.
BounceResult bounce_probe(double k, std::size_t iterations, std::uint64_t seed, const std::string& preset = "sso",
                          std::size_t population = 50, std::size_t dimension = 2);

} // namespace salp::harness
