#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "salp/harness.hpp"
#include "salp/io.hpp"
#include "salp/plot.hpp"

namespace salp::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Common {
    std::string config;
    std::string out;
    bool force = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
    auto* opt = cmd->add_option("--config", c.config, "JSON configuration file");
    if (needs_config) opt->required();
    cmd->add_option("--out", c.out, "output directory")->required();
    cmd->add_flag("--force", c.force, "overwrite an existing manifest");
    cmd->add_option("--seed", c.seed, "base seed");
    cmd->add_option("--reps", c.reps, "number of repetitions");
    cmd->add_option("--set", c.sets, "override a config field, key=value");
}

/// Defaults <- --config file <- dedicated flags <- --set overrides.
json merged_params(json defaults, const Common& c, const json& flags) {
    if (!c.config.empty()) {
        const json file = io::read_json(c.config);
        if (!file.is_object()) throw ConfigError("config: top level must be a JSON object");
        defaults.merge_patch(file);
    }
    defaults.merge_patch(flags);
    if (c.seed) defaults["seed"] = *c.seed;
    if (c.reps) defaults["repetitions"] = *c.reps;
    for (const auto& s : c.sets) io::apply_override(defaults, s);
    for (const auto& [key, _] : defaults.items())
        if (key.empty()) throw ConfigError("config: empty field name");
    return defaults;
}

template <typename T>
T param(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: ") + key + ": missing or wrong type");
    }
}

void check_known(const json& j, const json& defaults) {
    for (const auto& [key, _] : j.items())
        if (!defaults.contains(key)) throw ConfigError("config: unknown field '" + key + "'");
}

json manifest_header(const std::string& command, const json& params) {
    return json{{"command", command},
                {"generator", std::string(RngStream::generator_name)},
                {"objective_stream_seed", "seed + 0x9E3779B97F4A7C15"},
                {"parameters", params}};
}

void prepare_out(const fs::path& out, bool force) {
    io::check_manifest_guard(out, force);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create " + out.string() + ": " + ec.message());
}

int cmd_run(const Common& c, std::ostream& out) {
    json cfg_json = io::read_json(c.config);
    if (c.seed) cfg_json["base_seed"] = *c.seed;
    if (c.reps) cfg_json["repetitions"] = *c.reps;
    for (const auto& s : c.sets) io::apply_override(cfg_json, s);
    const auto cfg = io::config_from_json(cfg_json);
    io::check_manifest_guard(c.out, c.force);
    const auto results = harness::run_experiment(cfg);
    io::write_result_set(c.out, results, c.force);
    out << "wrote " << results.cells.size() << " cells x " << cfg.repetitions << " repetitions to " << c.out << "\n";
    return ok;
}

int cmd_report(const std::string& results_dir, const std::string& out_dir, double floor, std::ostream& out) {
    harness::ResultSet results = [&] {
        try {
            return io::load_result_set(results_dir);
        } catch (const IoError& e) {
            // an unreadable result directory is a bad input, not a write failure
            throw ConfigError(e.what());
        }
    }();
    const fs::path root(out_dir);
    for (const auto& entry : results.config.objectives) {
        const std::string label = entry.label();
        std::error_code ec;
        fs::create_directories(root / label, ec);
        if (ec) throw IoError("cannot create " + (root / label).string() + ": " + ec.message());

        std::vector<plot::Series> curves, boxes;
        for (const auto* cell : results.cells_for(label)) {
            curves.emplace_back(cell->algorithm, cell->abf);
            boxes.emplace_back(cell->algorithm, cell->finals.values);
        }
        if (results.config.repetitions >= 2) {
            const auto report = harness::compare_objective(results, label);
            io::write_text(root / label / "report.json", io::to_json(report).dump(2) + "\n");
            std::ostringstream csv;
            io::write_report_csv(csv, report);
            io::write_text(root / label / "report.csv", csv.str());
        }
        io::write_text(root / label / "abf.svg", plot::abf_svg("ABF - " + label, curves, floor));
        io::write_text(root / label / "box.svg", plot::box_svg("final best - " + label, boxes, floor));
        out << label << ": " << curves.size() << " algorithms\n";
    }
    return ok;
}

int cmd_dynamics(const Common& c, const json& flags, std::ostream& out) {
    const json defaults = {{"preset", "sso-nofood"}, {"lower", -100.0},        {"upper", 100.0},
                           {"dimension", 2},         {"recorded_iterations", 10}, {"iterations", 100},
                           {"population_size", 50},  {"seed", 1}};
    const json p = merged_params(defaults, c, flags);
    check_known(p, defaults);
    const auto dim = param<std::size_t>(p, "dimension");
    const Bounds bounds = Bounds::uniform(dim, param<double>(p, "lower"), param<double>(p, "upper"));
    const auto result = harness::dynamics_probe(param<std::string>(p, "preset"), bounds,
                                                param<std::size_t>(p, "recorded_iterations"),
                                                param<std::uint64_t>(p, "seed"),
                                                param<std::size_t>(p, "population_size"),
                                                param<std::size_t>(p, "iterations"));
    prepare_out(c.out, c.force);
    const fs::path dir(c.out);

    auto header = [&](std::ostringstream& os) {
        os << "iteration,member";
        for (std::size_t j = 0; j < dim; ++j) os << ",x" << (j + 1);
        os << '\n';
    };
    auto rows = [&](std::ostringstream& os, std::size_t iteration, const Snapshot& s) {
        for (std::size_t m = 0; m < s.size(); ++m) {
            os << iteration << ',' << m;
            for (double x : s[m]) os << ',' << io::format_double(x);
            os << '\n';
        }
    };
    std::ostringstream snaps, start;
    header(snaps);
    header(start);
    for (std::size_t t = 0; t < result.snapshots.size(); ++t) rows(snaps, t + 1, result.snapshots[t]);
    rows(start, 0, result.initial);
    io::write_text(dir / "snapshots.csv", snaps.str());
    io::write_text(dir / "start.csv", start.str());
    io::write_text(dir / "dynamics.svg",
                   plot::dynamics_svg(result.preset + " on random fitness", bounds, result.initial, result.snapshots,
                                      result.leader_index));
    const json summary = {{"preset", result.preset},
                          {"leader_index", result.leader_index},
                          {"final_centroid_norm", result.final_centroid_norm},
                          {"final_leader_max_abs", result.final_leader_max_abs}};
    io::write_text(dir / "summary.json", summary.dump(2) + "\n");
    io::write_text(dir / "manifest.json", manifest_header("dynamics", p).dump(2) + "\n");
    out << result.preset << ": final centroid norm " << result.final_centroid_norm << "\n";
    return ok;
}

int cmd_bounce(const Common& c, const json& flags, std::ostream& out) {
    const json defaults = {{"k", 7.0},       {"iterations", 100},      {"seed", 1},     {"repetitions", 30},
                           {"preset", "sso"}, {"population_size", 50}, {"dimension", 2}};
    const json p = merged_params(defaults, c, flags);
    check_known(p, defaults);
    const auto reps = param<std::size_t>(p, "repetitions");
    if (reps < 1) throw ConfigError("config: repetitions must be >= 1");
    const auto preset = param<std::string>(p, "preset");
    if (!SsoConfig::is_preset(preset)) throw ConfigError("config: preset: unknown SSO preset '" + preset + "'");
    prepare_out(c.out, c.force);

    std::ostringstream csv;
    csv << "seed,k,coordinate_updates,coordinates_outside,fraction\n";
    double lo = 1.0, hi = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto seed = param<std::uint64_t>(p, "seed") + r;
        const auto res = harness::bounce_probe(param<double>(p, "k"), param<std::size_t>(p, "iterations"), seed, preset,
                                               param<std::size_t>(p, "population_size"),
                                               param<std::size_t>(p, "dimension"));
        csv << seed << ',' << io::format_double(res.k) << ',' << res.stats.coordinate_updates << ','
            << res.stats.coordinates_outside << ',' << io::format_double(res.fraction()) << '\n';
        lo = std::min(lo, res.fraction());
        hi = std::max(hi, res.fraction());
    }
    const fs::path dir(c.out);
    io::write_text(dir / "bounce.csv", csv.str());
    io::write_text(dir / "manifest.json", manifest_header("bounce", p).dump(2) + "\n");
    out << "outside fraction over " << reps << " seeds: min " << lo << ", max " << hi << "\n";
    return ok;
}

int cmd_compare(const Common& c, const json& flags, std::ostream& out) {
    const json defaults = {{"algorithm", "asso"}, {"objective", "sphere"}, {"shift", 1000.0},
                           {"seed", 1},           {"repetitions", 1},       {"dimension", 2},
                           {"population_size", 50}, {"iterations", 100}};
    const json p = merged_params(defaults, c, flags);
    check_known(p, defaults);
    const auto algorithm = param<std::string>(p, "algorithm");
    if (!is_algorithm(algorithm)) throw ConfigError("config: algorithm: unknown algorithm id '" + algorithm + "'");
    const auto objective = param<std::string>(p, "objective");
    if (!objectives::is_registered(objective))
        throw ConfigError("config: objective: unknown objective '" + objective + "'");
    const auto reps = param<std::size_t>(p, "repetitions");
    prepare_out(c.out, c.force);

    json probes = json::array();
    double worst = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto rep = harness::shift_invariance_probe(
            algorithm, objective, param<double>(p, "shift"), param<std::uint64_t>(p, "seed") + r,
            param<std::size_t>(p, "dimension"), param<std::size_t>(p, "population_size"),
            param<std::size_t>(p, "iterations"));
        worst = std::max(worst, rep.max_deviation);
        probes.push_back({{"seed", rep.seed},
                          {"max_deviation", rep.max_deviation},
                          {"base_final", rep.base_final},
                          {"shifted_final", rep.shifted_final},
                          {"deviation_per_iteration", rep.deviation_per_iteration}});
    }
    const fs::path dir(c.out);
    io::write_text(dir / "shift_probe.json",
                   json{{"algorithm", algorithm},
                        {"objective", objective},
                        {"shift", param<double>(p, "shift")},
                        {"max_deviation", worst},
                        {"probes", probes}}
                           .dump(2) + "\n");
    io::write_text(dir / "manifest.json", manifest_header("compare", p).dump(2) + "\n");
    out << algorithm << " on " << objective << ": max trajectory deviation " << worst << "\n";
    return ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Salp swarm optimization experiments"};
    app.require_subcommand(1);

    Common run_c, dyn_c, bounce_c, cmp_c;
    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    add_common(run, run_c, true);

    auto* report = app.add_subcommand("report", "statistics and plots for a result directory");
    std::string results_dir, report_out;
    double floor = 1e-16;
    report->add_option("results", results_dir, "result directory written by 'run'")->required();
    report->add_option("--out", report_out, "output directory")->required();
    report->add_option("--floor", floor, "log-scale floor for nonpositive fitness");

    json dyn_flags = json::object(), bounce_flags = json::object(), cmp_flags = json::object();
    std::string dyn_preset, bounce_preset, cmp_alg, cmp_obj;
    std::optional<double> dyn_lower, dyn_upper, bounce_k, cmp_shift;
    std::optional<std::size_t> dyn_T, bounce_L;

    auto* dynamics = app.add_subcommand("dynamics", "swarm snapshots on a random-fitness objective");
    add_common(dynamics, dyn_c, false);
    dynamics->add_option("--preset", dyn_preset, "SSO preset id");
    dynamics->add_option("--lower", dyn_lower, "lower bound (every coordinate)");
    dynamics->add_option("--upper", dyn_upper, "upper bound (every coordinate)");
    dynamics->add_option("--iterations", dyn_T, "number of recorded iterations T");

    auto* bounce = app.add_subcommand("bounce", "fraction of leader updates leaving [10^k, 10^k+1]^D");
    add_common(bounce, bounce_c, false);
    bounce->add_option("--k", bounce_k, "bounds exponent");
    bounce->add_option("--iterations", bounce_L, "iterations L");
    bounce->add_option("--preset", bounce_preset, "SSO preset id");

    auto* compare = app.add_subcommand("compare", "shift-invariance probe: base vs shifted trajectory");
    add_common(compare, cmp_c, false);
    compare->add_option("--algorithm", cmp_alg, "algorithm id");
    compare->add_option("--objective", cmp_obj, "objective name");
    compare->add_option("--shift", cmp_shift, "scalar shift");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    }

    if (!dyn_preset.empty()) dyn_flags["preset"] = dyn_preset;
    if (dyn_lower) dyn_flags["lower"] = *dyn_lower;
    if (dyn_upper) dyn_flags["upper"] = *dyn_upper;
    if (dyn_T) dyn_flags["recorded_iterations"] = *dyn_T;
    if (bounce_k) bounce_flags["k"] = *bounce_k;
    if (bounce_L) bounce_flags["iterations"] = *bounce_L;
    if (!bounce_preset.empty()) bounce_flags["preset"] = bounce_preset;
    if (!cmp_alg.empty()) cmp_flags["algorithm"] = cmp_alg;
    if (!cmp_obj.empty()) cmp_flags["objective"] = cmp_obj;
    if (cmp_shift) cmp_flags["shift"] = *cmp_shift;

    try {
        if (run->parsed()) return cmd_run(run_c, out);
        if (report->parsed()) return cmd_report(results_dir, report_out, floor, out);
        if (dynamics->parsed()) return cmd_dynamics(dyn_c, dyn_flags, out);
        if (bounce->parsed()) return cmd_bounce(bounce_c, bounce_flags, out);
        if (compare->parsed()) return cmd_compare(cmp_c, cmp_flags, out);
    } catch (const OverwriteError& e) {
        err << "error: " << e.what() << "\n";
        return overwrite_refused;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return io_error;
    } catch (const std::invalid_argument& e) {  // ConfigError, DimensionError, ShapeError
        err << "error: " << e.what() << "\n";
        return config_error;
    }
    return config_error;
}

} // namespace salp::cli
