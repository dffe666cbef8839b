#include "salp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <set>
#include <sstream>

namespace salp::harness {

std::string ObjectiveEntry::label() const {
    std::ostringstream os;
    os << name << "_d" << dimension;
    const bool any = std::any_of(shift.begin(), shift.end(), [](double v) { return v != 0.0; });
    if (any) {
        os.precision(6);
        os << "_s";
        for (std::size_t j = 0; j < shift.size(); ++j) os << (j ? "_" : "") << shift[j];
    }
    return os.str();
}

objectives::ObjectiveSpec ObjectiveEntry::build(std::uint64_t seed) const {
    auto spec = objectives::make_objective(name, dimension, seed);
    if (shift.empty()) return spec;
    if (shift.size() == 1) return objectives::shifted(spec, shift.front());
    return objectives::shifted(spec, shift);
}

void ExperimentConfig::validate() const {
    if (algorithms.empty()) throw ConfigError("algorithms: at least one algorithm id is required");
    for (const auto& id : algorithms)
        if (!is_algorithm(id)) throw ConfigError("algorithms: unknown algorithm id '" + id + "'");
    if (objectives.empty()) throw ConfigError("objectives: at least one objective is required");
    std::set<std::string> labels;
    for (const auto& o : objectives) {
        if (!objectives::is_registered(o.name)) throw ConfigError("objectives: unknown objective '" + o.name + "'");
        if (o.dimension < 1) throw ConfigError("objectives: dimension of '" + o.name + "' must be >= 1");
        if (o.name == "rosenbrock" && o.dimension < 2) throw ConfigError("objectives: rosenbrock requires dimension >= 2");
        if (o.shift.size() > 1 && o.shift.size() != o.dimension)
            throw ConfigError("objectives: shift of '" + o.name + "' must be a scalar or have " +
                              std::to_string(o.dimension) + " entries");
        if (!labels.insert(o.label()).second) throw ConfigError("objectives: duplicate entry '" + o.label() + "'");
    }
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (population_size < 2) throw ConfigError("population_size must be >= 2");
    const bool has_de = std::find(algorithms.begin(), algorithms.end(), "de") != algorithms.end();
    if (has_de) {
        DeConfig de{de_weight, de_crossover_rate, population_size, iterations};
        de.validate();
    }
}

RunOptions ExperimentConfig::run_options() const {
    return RunOptions{population_size, iterations, snapshot, de_weight, de_crossover_rate};
}

std::uint64_t objective_seed(std::uint64_t run_seed) { return run_seed + 0x9E3779B97F4A7C15ull; }

const Cell& ResultSet::cell(const std::string& algorithm, const std::string& objective) const {
    for (const auto& c : cells)
        if (c.algorithm == algorithm && c.objective == objective) return c;
    throw ConfigError("no cell for (" + algorithm + ", " + objective + ")");
}

std::vector<const Cell*> ResultSet::cells_for(const std::string& objective) const {
    std::vector<const Cell*> out;
    for (const auto& c : cells)
        if (c.objective == objective) out.push_back(&c);
    return out;
}

RunTrace run_repetition(const ExperimentConfig& cfg, const std::string& algorithm, std::size_t objective_index,
                        std::size_t repetition, std::size_t* evaluations) {
    const auto& entry = cfg.objectives.at(objective_index);
    const std::uint64_t seed = cfg.seed_for(repetition);
    auto counter = std::make_shared<std::atomic<std::size_t>>(0);
    const auto objective = objectives::counted(entry.build(objective_seed(seed)), counter);
    RunTrace trace = run(algorithm, objective, cfg.run_options(), seed);
    trace.objective_id = entry.label();
    if (evaluations) *evaluations = counter->load();
    return trace;
}

namespace {

ResultSet allocate(const ExperimentConfig& cfg) {
    ResultSet rs;
    rs.config = cfg;
    for (const auto& o : cfg.objectives) {
        for (const auto& a : cfg.algorithms) {
            Cell c;
            c.algorithm = a;
            c.objective = o.label();
            c.traces.resize(cfg.repetitions);
            c.evaluations.resize(cfg.repetitions);
            rs.cells.push_back(std::move(c));
        }
    }
    return rs;
}

void run_slot(ResultSet& rs, std::size_t flat) {
    const auto& cfg = rs.config;
    const std::size_t reps = cfg.repetitions;
    const std::size_t cell_index = flat / reps;
    const std::size_t r = flat % reps;
    const std::size_t objective_index = cell_index / cfg.algorithms.size();
    auto& cell = rs.cells[cell_index];
    cell.traces[r] = run_repetition(cfg, cell.algorithm, objective_index, r, &cell.evaluations[r]);
}

void finalize(ResultSet& rs) {
    for (auto& c : rs.cells) {
        c.abf = stats::abf(c.traces);
        c.finals.label = c.algorithm;
        c.finals.values.clear();
        for (const auto& t : c.traces) c.finals.values.push_back(*t.final_best.fitness);
    }
}

} // namespace

ResultSet run_experiment_serial(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultSet rs = allocate(cfg);
    const std::size_t total = rs.cells.size() * cfg.repetitions;
    for (std::size_t flat = 0; flat < total; ++flat) run_slot(rs, flat);
    finalize(rs);
    return rs;
}

ResultSet run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultSet rs = allocate(cfg);
    const auto total = static_cast<std::ptrdiff_t>(rs.cells.size() * cfg.repetitions);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
        try {
            run_slot(rs, static_cast<std::size_t>(flat));
        } catch (...) {
#pragma omp critical(salp_harness_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    finalize(rs);
    return rs;
}

stats::ComparisonReport compare_objective(const ResultSet& results, const std::string& objective,
                                          std::size_t correction_factor) {
    std::vector<stats::SampleSet> samples;
    for (const auto* c : results.cells_for(objective)) samples.push_back(c->finals);
    if (samples.empty()) throw ConfigError("no results for objective '" + objective + "'");
    return stats::compare(objective, samples, correction_factor);
}

namespace {

double max_deviation(const Snapshot& base, const Snapshot& moved, double shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base[i].size(); ++j)
            worst = std::max(worst, std::abs((moved[i][j] - shift) - base[i][j]));
    return worst;
}

} // namespace

ShiftProbeReport shift_invariance_probe(const std::string& algorithm, const std::string& objective_name, double shift,
                                        std::uint64_t seed, std::size_t dimension, std::size_t population,
                                        std::size_t iterations) {
    const auto base = objectives::make_objective(objective_name, dimension, objective_seed(seed));
    const auto moved = objectives::shifted(objectives::make_objective(objective_name, dimension, objective_seed(seed)),
                                           shift);
    RunOptions opts;
    opts.population_size = population;
    opts.iterations = iterations;
    opts.snapshot = true;
    const RunTrace a = run(algorithm, base, opts, seed);
    const RunTrace b = run(algorithm, moved, opts, seed);

    ShiftProbeReport report;
    report.algorithm = algorithm;
    report.objective = objective_name;
    report.shift = shift;
    report.seed = seed;
    report.base_final = *a.final_best.fitness;
    report.shifted_final = *b.final_best.fitness;
    if (a.initial && b.initial) report.deviation_per_iteration.push_back(max_deviation(*a.initial, *b.initial, shift));
    for (std::size_t t = 0; t < a.snapshots->size(); ++t)
        report.deviation_per_iteration.push_back(max_deviation((*a.snapshots)[t], (*b.snapshots)[t], shift));
    for (double d : report.deviation_per_iteration) report.max_deviation = std::max(report.max_deviation, d);
    return report;
}

DynamicsResult dynamics_probe(const std::string& preset, const Bounds& bounds, std::size_t recorded_iterations,
                              std::uint64_t seed, std::size_t population, std::size_t iterations) {
    if (!bounds.symmetric()) throw ConfigError("dynamics probe requires symmetric bounds (lower = -upper)");
    if (!SsoConfig::is_preset(preset)) throw ConfigError("dynamics probe: unknown SSO preset '" + preset + "'");
    if (recorded_iterations > iterations)
        throw ConfigError("dynamics probe: recorded iterations (" + std::to_string(recorded_iterations) +
                          ") exceed total iterations (" + std::to_string(iterations) + ")");

    auto objective = objectives::make_objective("random", bounds.dimension(), objective_seed(seed));
    objective.base_bounds = bounds;
    SsoConfig cfg = SsoConfig::preset(preset);
    cfg.population_size = population;
    cfg.iterations = iterations;
    RunTrace trace = run_sso(objective, cfg, seed, true);

    DynamicsResult out{preset, bounds, seed, cfg.leader_count() - 1, *trace.initial, {}, trace.snapshots->back(), 0, 0};
    out.snapshots.assign(trace.snapshots->begin(),
                         trace.snapshots->begin() + static_cast<std::ptrdiff_t>(recorded_iterations));

    Position centroid(bounds.dimension(), 0.0);
    for (const auto& p : out.final_positions)
        for (std::size_t j = 0; j < p.size(); ++j) centroid[j] += p[j] / static_cast<double>(out.final_positions.size());
    double sq = 0.0;
    for (double c : centroid) sq += c * c;
    out.final_centroid_norm = std::sqrt(sq);
    for (double v : out.final_positions[out.leader_index])
        out.final_leader_max_abs = std::max(out.final_leader_max_abs, std::abs(v));
    return out;
}

BounceResult bounce_probe(double k, std::size_t iterations, std::uint64_t seed, const std::string& preset,
                          std::size_t population, std::size_t dimension) {
    if (iterations < 1) throw ConfigError("bounce probe: iterations must be >= 1");
    const double lower = std::pow(10.0, k);
    auto objective = objectives::make_objective("sphere", dimension);
    objective.base_bounds = Bounds::uniform(dimension, lower, lower + 1.0);
    SsoConfig cfg = SsoConfig::preset(preset);
    cfg.population_size = population;
    cfg.iterations = iterations;
    BounceResult out{k, preset, seed, {}};
    run_sso(objective, cfg, seed, false, &out.stats);
    return out;
}

} // namespace salp::harness
