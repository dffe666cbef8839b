#include "salp/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace salp {

namespace {

struct PresetEntry {
    std::string_view id;
    SsoConfig config;
};

constexpr auto kPublished = LeaderRule::published;
constexpr auto kAmended = LeaderRule::amended;
constexpr auto kChain = PopulationSplit::published_chain;
constexpr auto kHalves = PopulationSplit::code_halves;

const std::vector<PresetEntry>& presets() {
    static const std::vector<PresetEntry> table = {
        {"sso", {kPublished, kChain, 0.5, true}},
        {"sso-strict", {kPublished, kChain, 0.0, true}},
        {"sso-code", {kPublished, kHalves, 0.5, true}},
        {"asso", {kAmended, kHalves, 0.5, true}},
        {"sso-nofood", {kPublished, kChain, 0.5, false}},
        {"sso-code-nofood", {kPublished, kHalves, 0.5, false}},
        {"asso-nofood", {kAmended, kHalves, 0.5, false}},
    };
    return table;
}

Position leader_update(std::span<const double> food, const Bounds& bounds, double c1, RngStream& rng,
                       double c3_threshold, LeaderRule rule) {
    if (food.size() != bounds.dimension())
        throw DimensionError("leader update: food has " + std::to_string(food.size()) + " coordinates, bounds have " +
                             std::to_string(bounds.dimension()));
    Position out(food.size());
    for (std::size_t j = 0; j < food.size(); ++j) {
        const double c2 = rng.uniform();
        const double c3 = rng.uniform();
        const bool positive = c3 >= c3_threshold;
        out[j] = rule == LeaderRule::published
                     ? leader_move_published(food[j], bounds.lower(j), bounds.upper(j), c1, c2, positive)
                     : leader_move_amended(food[j], bounds.lower(j), bounds.upper(j), c1, c2, positive);
    }
    return out;
}

void record(RunTrace& trace, const SalpChain& chain, bool snapshot) {
    trace.best_per_iteration.push_back(*chain.food->fitness);
    if (snapshot) trace.snapshots->push_back(chain.positions());
}

RunTrace start_trace(std::string_view algorithm, const ObjectiveSpec& objective, std::uint64_t seed,
                     std::size_t iterations, bool snapshot) {
    RunTrace trace;
    trace.algorithm_id = std::string(algorithm);
    trace.objective_id = objective.name;
    trace.seed = seed;
    trace.best_per_iteration.reserve(iterations);
    if (snapshot) {
        trace.snapshots.emplace();
        trace.snapshots->reserve(iterations);
    }
    return trace;
}

} // namespace

SsoConfig SsoConfig::preset(std::string_view id) {
    for (const auto& p : presets())
        if (p.id == id) return p.config;
    throw ConfigError("unknown SSO preset '" + std::string(id) + "'");
}

bool SsoConfig::is_preset(std::string_view id) {
    return std::any_of(presets().begin(), presets().end(), [&](const auto& p) { return p.id == id; });
}

std::size_t SsoConfig::leader_count() const {
    return population_split == PopulationSplit::published_chain ? 1 : (population_size + 1) / 2;
}

void SsoConfig::validate() const {
    if (population_size < 2) throw ConfigError("population_size must be >= 2");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (!(c3_threshold >= 0.0 && c3_threshold <= 1.0)) throw ConfigError("c3_threshold must lie in [0, 1]");
}

void DeConfig::validate() const {
    if (population_size < 4) throw ConfigError("DE population_size must be >= 4");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (!(weight > 0.0 && weight <= 2.0)) throw ConfigError("DE weight must lie in (0, 2]");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("DE crossover_rate must lie in [0, 1]");
}

double c1_coefficient(std::size_t iter, std::size_t total) {
    if (total == 0) throw ConfigError("c1: total iterations must be >= 1");
    const double r = 4.0 * static_cast<double>(iter) / static_cast<double>(total);
    return 2.0 * std::exp(-(r * r));
}

double leader_move_published(double food, double lower, double upper, double c1, double c2, bool positive) {
    const double step = c1 * ((upper - lower) * c2 + lower);
    return positive ? food + step : food - step;
}

double leader_move_amended(double food, double lower, double upper, double c1, double c2, bool positive) {
    const double step = c1 * c2 * (upper - lower);
    return positive ? food + step : food - step;
}

Position leader_update_published(std::span<const double> food, const Bounds& bounds, double c1, RngStream& rng,
                                 double c3_threshold) {
    return leader_update(food, bounds, c1, rng, c3_threshold, LeaderRule::published);
}

Position leader_update_amended(std::span<const double> food, const Bounds& bounds, double c1, RngStream& rng,
                               double c3_threshold) {
    return leader_update(food, bounds, c1, rng, c3_threshold, LeaderRule::amended);
}

Position follower_update(std::span<const double> current, std::span<const double> predecessor) {
    if (current.size() != predecessor.size())
        throw DimensionError("follower update: " + std::to_string(current.size()) + " vs " +
                             std::to_string(predecessor.size()) + " coordinates");
    Position out(current.size());
    for (std::size_t j = 0; j < current.size(); ++j) out[j] = 0.5 * (current[j] + predecessor[j]);
    return out;
}

void evaluate_chain(SalpChain& chain, const ObjectiveSpec& objective) {
    for (auto& m : chain.members)
        if (!m.evaluated()) m.fitness = objective(m.position);
    chain.update_food();
}

void sso_step(SalpChain& chain, const ObjectiveSpec& objective, const SsoConfig& cfg, std::size_t iter,
              RngStream& rng, LeaderStats* stats) {
    if (!chain.food) throw ConfigError("sso_step: chain has no food source; evaluate it first");
    const Bounds bounds = objective.bounds();
    const double c1 = c1_coefficient(iter, cfg.iterations);
    const std::size_t leaders = std::min(cfg.leader_count(), chain.size());
    const Position origin(bounds.dimension(), 0.0);
    const Position& attractor = cfg.food_attraction ? chain.food->position : origin;

    for (std::size_t i = 0; i < chain.size(); ++i) {
        auto& member = chain.members[i];
        if (i < leaders) {
            member.position = cfg.leader_rule == LeaderRule::published
                                  ? leader_update_published(attractor, bounds, c1, rng, cfg.c3_threshold)
                                  : leader_update_amended(attractor, bounds, c1, rng, cfg.c3_threshold);
            if (stats) {
                stats->coordinate_updates += member.position.size();
                for (std::size_t j = 0; j < member.position.size(); ++j)
                    if (member.position[j] < bounds.lower(j) || member.position[j] > bounds.upper(j))
                        ++stats->coordinates_outside;
            }
        } else {
            member.position = follower_update(member.position, chain.members[i - 1].position);
        }
        member.fitness.reset();
    }
    for (auto& member : chain.members) clip_in_place(member.position, bounds);
    evaluate_chain(chain, objective);
}

Candidate random_search_step(const std::optional<Candidate>& best, const ObjectiveSpec& objective, std::size_t n,
                             RngStream& rng, Snapshot* batch) {
    if (n < 1 && !best) throw ConfigError("random search batch size must be >= 1");
    const Bounds bounds = objective.bounds();
    std::optional<Candidate> incumbent = best;
    if (batch) batch->clear();
    for (std::size_t k = 0; k < n; ++k) {
        Candidate c{uniform_point(bounds, rng), std::nullopt};
        c.fitness = objective(c.position);
        if (batch) batch->push_back(c.position);
        if (!incumbent || *c.fitness < *incumbent->fitness) incumbent = std::move(c);
    }
    return *incumbent;
}

Position de_mutant(std::span<const double> base, std::span<const double> plus, std::span<const double> minus,
                   double weight) {
    if (plus.size() != base.size() || minus.size() != base.size()) throw DimensionError("de_mutant: length mismatch");
    Position out(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) out[j] = base[j] + weight * (plus[j] - minus[j]);
    return out;
}

void de_step(SalpChain& population, const ObjectiveSpec& objective, const DeConfig& cfg, RngStream& rng) {
    const std::size_t n = population.size();
    if (n < 4) throw ConfigError("DE requires population_size >= 4, got " + std::to_string(n));
    const Bounds bounds = objective.bounds();
    const std::size_t dim = bounds.dimension();

    std::vector<Candidate> trials(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r1, r2, r3;
        do r1 = rng.uniform_index(n); while (r1 == i);
        do r2 = rng.uniform_index(n); while (r2 == i || r2 == r1);
        do r3 = rng.uniform_index(n); while (r3 == i || r3 == r1 || r3 == r2);
        const std::size_t j_rand = rng.uniform_index(dim);

        const Position mutant = de_mutant(population.members[r1].position, population.members[r2].position,
                                          population.members[r3].position, cfg.weight);
        Position trial = population.members[i].position;
        for (std::size_t j = 0; j < dim; ++j) {
            const double u = rng.uniform();
            if (u < cfg.crossover_rate || j == j_rand) trial[j] = mutant[j];
        }
        clip_in_place(trial, bounds);
        trials[i].fitness = objective(trial);
        trials[i].position = std::move(trial);
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& target = population.members[i];
        if (*trials[i].fitness <= *target.fitness) target = std::move(trials[i]);
    }
    population.update_food();
}

const std::vector<std::string>& algorithm_ids() {
    static const std::vector<std::string> ids = {"sso",        "sso-strict",      "sso-code", "asso",
                                                 "sso-nofood", "sso-code-nofood", "rs",       "de"};
    return ids;
}

bool is_algorithm(std::string_view id) {
    return id == "rs" || id == "de" || SsoConfig::is_preset(id);
}

RunTrace run_sso(const ObjectiveSpec& objective, const SsoConfig& cfg, std::uint64_t seed, bool snapshot,
                 LeaderStats* stats) {
    cfg.validate();
    RngStream rng(seed);
    RunTrace trace = start_trace("sso", objective, seed, cfg.iterations, snapshot);
    SalpChain chain = uniform_init(objective.bounds(), cfg.population_size, rng);
    evaluate_chain(chain, objective);
    if (snapshot) trace.initial = chain.positions();
    for (std::size_t iter = 1; iter <= cfg.iterations; ++iter) {
        sso_step(chain, objective, cfg, iter, rng, stats);
        record(trace, chain, snapshot);
    }
    trace.final_best = *chain.food;
    return trace;
}

RunTrace run_random_search(const ObjectiveSpec& objective, std::size_t n, std::size_t iterations, std::uint64_t seed,
                           bool snapshot) {
    if (n < 1) throw ConfigError("random search batch size must be >= 1");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    RngStream rng(seed);
    RunTrace trace = start_trace("rs", objective, seed, iterations, snapshot);
    std::optional<Candidate> best;
    Snapshot batch;
    for (std::size_t iter = 1; iter <= iterations; ++iter) {
        best = random_search_step(best, objective, n, rng, snapshot ? &batch : nullptr);
        if (snapshot) trace.snapshots->push_back(batch);
        trace.best_per_iteration.push_back(*best->fitness);
    }
    trace.final_best = *best;
    return trace;
}

RunTrace run_de(const ObjectiveSpec& objective, const DeConfig& cfg, std::uint64_t seed, bool snapshot) {
    cfg.validate();
    RngStream rng(seed);
    RunTrace trace = start_trace("de", objective, seed, cfg.iterations, snapshot);
    SalpChain population = uniform_init(objective.bounds(), cfg.population_size, rng);
    evaluate_chain(population, objective);
    if (snapshot) trace.initial = population.positions();
    for (std::size_t iter = 1; iter <= cfg.iterations; ++iter) {
        de_step(population, objective, cfg, rng);
        record(trace, population, snapshot);
    }
    trace.final_best = *population.food;
    return trace;
}

RunTrace run(std::string_view algorithm_id, const ObjectiveSpec& objective, const RunOptions& options,
             std::uint64_t seed) {
    RunTrace trace;
    if (algorithm_id == "rs") {
        trace = run_random_search(objective, options.population_size, options.iterations, seed, options.snapshot);
    } else if (algorithm_id == "de") {
        DeConfig cfg{options.de_weight, options.de_crossover_rate, options.population_size, options.iterations};
        trace = run_de(objective, cfg, seed, options.snapshot);
    } else if (SsoConfig::is_preset(algorithm_id)) {
        SsoConfig cfg = SsoConfig::preset(algorithm_id);
        cfg.population_size = options.population_size;
        cfg.iterations = options.iterations;
        trace = run_sso(objective, cfg, seed, options.snapshot);
    } else {
        throw ConfigError("unknown algorithm '" + std::string(algorithm_id) + "'");
    }
    trace.algorithm_id = std::string(algorithm_id);
    return trace;
}

} // namespace salp
