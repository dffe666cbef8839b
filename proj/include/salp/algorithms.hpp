#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salp/core.hpp"
#include "salp/objectives.hpp"

namespace salp {

using objectives::ObjectiveSpec;

enum class LeaderRule {
    published,  // F ± c1((ub - lb)c2 + lb)
    amended,    // F ± c1 c2 (ub - lb)
};

enum class PopulationSplit {
    published_chain,  // one leader, N-1 followers
    code_halves,  // first ceil(N/2) members use the leader rule
};

struct SsoConfig {
    LeaderRule leader_rule = LeaderRule::published;
    PopulationSplit population_split = PopulationSplit::published_chain;
    double c3_threshold = 0.5;
    bool food_attraction = true;
    std::size_t population_size = 50;
    std::size_t iterations = 100;

    /// sso, sso-strict, sso-code, asso, sso-nofood, sso-code-nofood, asso-nofood.
    static SsoConfig preset(std::string_view id);
    static bool is_preset(std::string_view id);

    /// Number of members moved by the leader rule.
    std::size_t leader_count() const;
    void validate() const;
};

struct DeConfig {
    double weight = 0.3;          // F
    double crossover_rate = 0.5;  // CR
    std::size_t population_size = 50;
    std::size_t iterations = 100;

    void validate() const;
};

/// c1 = 2 exp(-(4 iter / total)^2).
double c1_coefficient(std::size_t iter, std::size_t total);

/// One coordinate of the leader rule with the draws supplied explicitly.
/// `positive` selects the "+" branch (c3 >= threshold).
double leader_move_published(double food, double lower, double upper, double c1, double c2, bool positive);
double leader_move_amended(double food, double lower, double upper, double c1, double c2, bool positive);

/// Leader rules.  Two draws per coordinate in order (c2, c3); the "+"
/// branch fires when c3 >= c3_threshold.  The result is not clipped.
Position leader_update_published(std::span<const double> food, const Bounds& bounds, double c1, RngStream& rng,
                                 double c3_threshold = 0.5);
Position leader_update_amended(std::span<const double> food, const Bounds& bounds, double c1, RngStream& rng,
                               double c3_threshold = 0.5);

/// Coordinate-wise midpoint of the two positions.
Position follower_update(std::span<const double> current, std::span<const double> predecessor);

/// Pre-clip leader diagnostics accumulated over steps.
struct LeaderStats {
    std::size_t coordinate_updates = 0;
    std::size_t coordinates_outside = 0;

    double outside_fraction() const {
        return coordinate_updates ? static_cast<double>(coordinates_outside) / coordinate_updates : 0.0;
    }
};

/// Evaluates every unevaluated member, counts nothing else, and refreshes food.
void evaluate_chain(SalpChain& chain, const ObjectiveSpec& objective);

/// One SSO iteration at index iter in [1, L].
///
/// Members are swept in chain order: leader-rule members move relative to
/// food (or the origin without food attraction), followers move to the
/// midpoint with their predecessor's new, not yet clipped, position. All
/// members are then clipped, evaluated, and food is refreshed once.
void sso_step(SalpChain& chain, const ObjectiveSpec& objective, const SsoConfig& cfg, std::size_t iter,
              RngStream& rng, LeaderStats* stats = nullptr);

/// Draws n fresh uniform points, returns the better of incumbent and batch
/// best (the incumbent wins ties). The batch is copied to `batch` if given.
Candidate random_search_step(const std::optional<Candidate>& best, const ObjectiveSpec& objective, std::size_t n,
                             RngStream& rng, Snapshot* batch = nullptr);

/// base + weight * (plus - minus), coordinate-wise.
Position de_mutant(std::span<const double> base, std::span<const double> plus, std::span<const double> minus,
                   double weight);

/// One DE/rand/1/bin generation with greedy (<=) replacement.
void de_step(SalpChain& population, const ObjectiveSpec& objective, const DeConfig& cfg, RngStream& rng);

struct RunOptions {
    std::size_t population_size = 50;
    std::size_t iterations = 100;
    bool snapshot = false;
    double de_weight = 0.3;
    double de_crossover_rate = 0.5;
};

/// Algorithm ids accepted by run().
const std::vector<std::string>& algorithm_ids();
bool is_algorithm(std::string_view id);

RunTrace run_sso(const ObjectiveSpec& objective, const SsoConfig& cfg, std::uint64_t seed, bool snapshot = false,
                 LeaderStats* stats = nullptr);
RunTrace run_random_search(const ObjectiveSpec& objective, std::size_t n, std::size_t iterations, std::uint64_t seed,
                           bool snapshot = false);
RunTrace run_de(const ObjectiveSpec& objective, const DeConfig& cfg, std::uint64_t seed, bool snapshot = false);

/// Dispatch by id; throws ConfigError for an unknown id.
RunTrace run(std::string_view algorithm_id, const ObjectiveSpec& objective, const RunOptions& options,
             std::uint64_t seed);

} // namespace salp
