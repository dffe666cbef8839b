#include "salp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace salp::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

json candidate_json(const Candidate& c) {
    json j;
    j["position"] = c.position;
    j["fitness"] = c.fitness ? json(*c.fitness) : json(nullptr);
    return j;
}

Candidate candidate_from(const json& j) {
    Candidate c;
    c.position = j.at("position").get<Position>();
    if (!j.at("fitness").is_null()) c.fitness = j.at("fitness").get<double>();
    return c;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const fs::path& where) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw IoError(where.string() + ": cannot parse number '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, const fs::path& where) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw IoError(where.string() + ": cannot parse integer '" + s + "'");
    return v;
}

/// Rows of a CSV file without its header.
std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::vector<std::vector<std::string>> rows;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split(line));
    }
    return rows;
}

template <typename T>
T field(const json& j, const char* key, const std::string& context) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(context + key + ": missing or wrong type");
    }
}

} // namespace

json to_json(const RunTrace& trace) {
    json j;
    j["algorithm_id"] = trace.algorithm_id;
    j["objective_id"] = trace.objective_id;
    j["seed"] = trace.seed;
    j["best_per_iteration"] = trace.best_per_iteration;
    j["final_best"] = candidate_json(trace.final_best);
    j["snapshots"] = trace.snapshots ? json(*trace.snapshots) : json(nullptr);
    if (trace.initial) j["initial"] = *trace.initial;
    return j;
}

RunTrace trace_from_json(const json& j) {
    RunTrace t;
    t.algorithm_id = j.at("algorithm_id").get<std::string>();
    t.objective_id = j.at("objective_id").get<std::string>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.best_per_iteration = j.at("best_per_iteration").get<std::vector<double>>();
    t.final_best = candidate_from(j.at("final_best"));
    if (j.contains("snapshots") && !j["snapshots"].is_null()) t.snapshots = j["snapshots"].get<std::vector<Snapshot>>();
    if (j.contains("initial")) t.initial = j["initial"].get<Snapshot>();
    return t;
}

void write_trace_csv(std::ostream& os, const RunTrace& trace) {
    os << "iteration,best_fitness\n";
    for (std::size_t i = 0; i < trace.best_per_iteration.size(); ++i)
        os << (i + 1) << ',' << format_double(trace.best_per_iteration[i]) << '\n';
}

json to_json(const stats::ComparisonReport& report) {
    json j;
    j["objective"] = report.objective;
    j["correction_factor"] = report.correction_factor;
    j["test"] = "mann-whitney-u, two-sided";
    j["pairs"] = json::array();
    for (const auto& p : report.pairs) {
        j["pairs"].push_back({{"a", p.a},
                              {"b", p.b},
                              {"u", p.u},
                              {"n_a", p.n_a},
                              {"n_b", p.n_b},
                              {"p_raw", p.p_raw},
                              {"p_adjusted", p.p_adjusted},
                              {"significance", std::string(stats::to_string(p.significance))},
                              {"exact", p.exact},
                              {"median_a", p.median_a},
                              {"median_b", p.median_b}});
    }
    return j;
}

void write_report_csv(std::ostream& os, const stats::ComparisonReport& report) {
    std::vector<std::string> labels;
    for (const auto& p : report.pairs) {
        for (const auto& l : {p.a, p.b})
            if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
    os << "algorithm";
    for (const auto& l : labels) os << ',' << l;
    os << '\n';
    for (const auto& row : labels) {
        os << row;
        for (const auto& col : labels) {
            os << ',';
            if (row == col) continue;
            const auto p = report.find(row, col);
            os << format_double(p.p_adjusted) << ' ' << stats::to_string(p.significance);
        }
        os << '\n';
    }
}

json to_json(const harness::ExperimentConfig& cfg) {
    json j;
    j["algorithms"] = cfg.algorithms;
    j["objectives"] = json::array();
    for (const auto& o : cfg.objectives) {
        json e{{"name", o.name}, {"dimension", o.dimension}};
        if (o.shift.size() == 1) e["shift"] = o.shift.front();
        else if (!o.shift.empty()) e["shift"] = o.shift;
        j["objectives"].push_back(e);
    }
    j["population_size"] = cfg.population_size;
    j["iterations"] = cfg.iterations;
    j["repetitions"] = cfg.repetitions;
    j["base_seed"] = cfg.base_seed;
    j["snapshot"] = cfg.snapshot;
    j["de"] = {{"weight", cfg.de_weight}, {"crossover_rate", cfg.de_crossover_rate}};
    return j;
}

harness::ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    static const std::set<std::string> known = {"algorithms", "objectives", "population_size", "iterations",
                                                "repetitions", "base_seed",  "snapshot",        "de"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ConfigError("config: unknown field '" + key + "'");

    harness::ExperimentConfig cfg;
    cfg.algorithms = field<std::vector<std::string>>(j, "algorithms", "config: ");
    if (!j.contains("objectives") || !j["objectives"].is_array())
        throw ConfigError("config: objectives: missing or not an array");
    for (std::size_t i = 0; i < j["objectives"].size(); ++i) {
        const auto& e = j["objectives"][i];
        const std::string ctx = "config: objectives[" + std::to_string(i) + "].";
        harness::ObjectiveEntry entry;
        entry.name = field<std::string>(e, "name", ctx);
        if (e.contains("dimension")) entry.dimension = field<std::size_t>(e, "dimension", ctx);
        if (e.contains("shift")) {
            if (e["shift"].is_number()) entry.shift = {e["shift"].get<double>()};
            else entry.shift = field<Position>(e, "shift", ctx);
        }
        cfg.objectives.push_back(std::move(entry));
    }
    if (j.contains("population_size")) cfg.population_size = field<std::size_t>(j, "population_size", "config: ");
    if (j.contains("iterations")) cfg.iterations = field<std::size_t>(j, "iterations", "config: ");
    if (j.contains("repetitions")) cfg.repetitions = field<std::size_t>(j, "repetitions", "config: ");
    if (j.contains("base_seed")) cfg.base_seed = field<std::uint64_t>(j, "base_seed", "config: ");
    if (j.contains("snapshot")) cfg.snapshot = field<bool>(j, "snapshot", "config: ");
    if (j.contains("de")) {
        const auto& de = j["de"];
        if (!de.is_object()) throw ConfigError("config: de: must be an object");
        for (const auto& [key, _] : de.items())
            if (key != "weight" && key != "crossover_rate") throw ConfigError("config: unknown field 'de." + key + "'");
        if (de.contains("weight")) cfg.de_weight = field<double>(de, "weight", "config: de.");
        if (de.contains("crossover_rate")) cfg.de_crossover_rate = field<double>(de, "crossover_rate", "config: de.");
    }
    cfg.validate();
    return cfg;
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
}

harness::ExperimentConfig read_config(const fs::path& path) { return config_from_json(read_json(path)); }

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    json* node = &config;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("override key '" + key + "' is malformed");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (!node->is_object() && !node->is_null()) throw ConfigError("override key '" + key + "' is not an object path");
        start = dot + 1;
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

void check_manifest_guard(const fs::path& dir, bool force) {
    if (!force && fs::exists(dir / "manifest.json"))
        throw OverwriteError("manifest exists: " + (dir / "manifest.json").string() + " (use --force to overwrite)");
}

namespace {

void make_dirs(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

} // namespace

void write_result_set(const fs::path& dir, const harness::ResultSet& results, bool force) {
    check_manifest_guard(dir, force);
    make_dirs(dir);
    const auto& cfg = results.config;

    json manifest;
    manifest["generator"] = std::string(RngStream::generator_name);
    manifest["seed_schedule"] = "seed = base_seed + repetition";
    manifest["objective_stream_seed"] = "seed + 0x9E3779B97F4A7C15";
    manifest["config"] = to_json(cfg);
    manifest["cells"] = json::array();
    manifest["objectives"] = json::array();

    for (const auto& entry : cfg.objectives) {
        const std::string label = entry.label();
        make_dirs(dir / label);
        for (const auto* cell : results.cells_for(label)) {
            const std::string alg = cell->algorithm;
            std::ostringstream traces, finals, abf_csv, snaps;
            traces << "repetition,seed,iteration,best_fitness\n";
            finals << "repetition,seed,evaluations,best_fitness";
            for (std::size_t j = 0; j < entry.dimension; ++j) finals << ",x" << (j + 1);
            finals << '\n';
            snaps << "repetition,iteration,member";
            for (std::size_t j = 0; j < entry.dimension; ++j) snaps << ",x" << (j + 1);
            snaps << '\n';
            json seeds = json::array(), evals = json::array();
            for (std::size_t r = 0; r < cell->traces.size(); ++r) {
                const auto& t = cell->traces[r];
                seeds.push_back(t.seed);
                evals.push_back(cell->evaluations[r]);
                for (std::size_t i = 0; i < t.best_per_iteration.size(); ++i)
                    traces << r << ',' << t.seed << ',' << (i + 1) << ',' << format_double(t.best_per_iteration[i])
                           << '\n';
                finals << r << ',' << t.seed << ',' << cell->evaluations[r] << ','
                       << format_double(*t.final_best.fitness);
                for (double x : t.final_best.position) finals << ',' << format_double(x);
                finals << '\n';
                auto emit = [&](std::size_t iteration, const Snapshot& s) {
                    for (std::size_t m = 0; m < s.size(); ++m) {
                        snaps << r << ',' << iteration << ',' << m;
                        for (double x : s[m]) snaps << ',' << format_double(x);
                        snaps << '\n';
                    }
                };
                if (t.initial) emit(0, *t.initial);
                if (t.snapshots)
                    for (std::size_t i = 0; i < t.snapshots->size(); ++i) emit(i + 1, (*t.snapshots)[i]);
            }
            abf_csv << "iteration,abf\n";
            for (std::size_t i = 0; i < cell->abf.size(); ++i)
                abf_csv << (i + 1) << ',' << format_double(cell->abf[i]) << '\n';

            const std::string tr = label + "/traces_" + alg + ".csv";
            const std::string fi = label + "/finals_" + alg + ".csv";
            const std::string ab = label + "/abf_" + alg + ".csv";
            write_text(dir / tr, traces.str());
            write_text(dir / fi, finals.str());
            write_text(dir / ab, abf_csv.str());
            json c{{"algorithm", alg}, {"objective", label}, {"seeds", seeds}, {"evaluations", evals},
                   {"traces", tr},     {"finals", fi},      {"abf", ab}};
            if (cfg.snapshot) {
                const std::string sn = label + "/snapshots_" + alg + ".csv";
                write_text(dir / sn, snaps.str());
                c["snapshots"] = sn;
            }
            manifest["cells"].push_back(c);
        }
        json o{{"label", label}, {"name", entry.name}, {"dimension", entry.dimension}};
        if (cfg.repetitions >= 2) {
            const auto report = harness::compare_objective(results, label);
            write_text(dir / label / "report.json", to_json(report).dump(2) + "\n");
            o["report"] = label + "/report.json";
        }
        manifest["objectives"].push_back(o);
    }
    // manifest last: its presence marks a complete result directory
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

harness::ResultSet load_result_set(const fs::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path)) throw IoError("no manifest.json in " + dir.string());
    const json manifest = read_json(manifest_path);
    harness::ResultSet rs;
    try {
        rs.config = config_from_json(manifest.at("config"));
        for (const auto& c : manifest.at("cells")) {
            harness::Cell cell;
            cell.algorithm = c.at("algorithm").get<std::string>();
            cell.objective = c.at("objective").get<std::string>();
            const auto seeds = c.at("seeds").get<std::vector<std::uint64_t>>();
            cell.evaluations = c.at("evaluations").get<std::vector<std::size_t>>();
            cell.traces.resize(seeds.size());
            for (std::size_t r = 0; r < seeds.size(); ++r) {
                cell.traces[r].algorithm_id = cell.algorithm;
                cell.traces[r].objective_id = cell.objective;
                cell.traces[r].seed = seeds[r];
            }
            const fs::path tr = dir / c.at("traces").get<std::string>();
            for (const auto& row : read_csv(tr)) {
                if (row.size() != 4) throw IoError(tr.string() + ": expected 4 columns");
                const auto r = parse_u64(row[0], tr);
                if (r >= cell.traces.size()) throw IoError(tr.string() + ": repetition out of range");
                cell.traces[r].best_per_iteration.push_back(parse_double(row[3], tr));
            }
            const fs::path fi = dir / c.at("finals").get<std::string>();
            for (const auto& row : read_csv(fi)) {
                if (row.size() < 4) throw IoError(fi.string() + ": expected at least 4 columns");
                const auto r = parse_u64(row[0], fi);
                if (r >= cell.traces.size()) throw IoError(fi.string() + ": repetition out of range");
                auto& best = cell.traces[r].final_best;
                best.fitness = parse_double(row[3], fi);
                for (std::size_t k = 4; k < row.size(); ++k) best.position.push_back(parse_double(row[k], fi));
            }
            for (const auto& t : cell.traces)
                if (t.best_per_iteration.empty() || !t.final_best.fitness)
                    throw IoError("missing traces for (" + cell.algorithm + ", " + cell.objective + ")");
            cell.abf = stats::abf(cell.traces);
            cell.finals.label = cell.algorithm;
            for (const auto& t : cell.traces) cell.finals.values.push_back(*t.final_best.fitness);
            rs.cells.push_back(std::move(cell));
        }
    } catch (const json::exception& e) {
        throw IoError(manifest_path.string() + ": malformed manifest: " + e.what());
    }
    return rs;
}

} // namespace salp::io
