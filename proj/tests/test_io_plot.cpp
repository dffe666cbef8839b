#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "salp/harness.hpp"
#include "salp/io.hpp"
#include "salp/plot.hpp"

using namespace salp;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("salp_io_" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
    return n;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

harness::ExperimentConfig tiny_config() {
    harness::ExperimentConfig cfg;
    cfg.algorithms = {"rs", "asso"};
    cfg.objectives = {{"sphere", 2, {1e9}}, {"rastrigin", 3, {}}};
    cfg.population_size = 6;
    cfg.iterations = 5;
    cfg.repetitions = 3;
    return cfg;
}

} // namespace

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, 0.1, 1e9, 3.6253849384403628, -2.5e-300}) CHECK(std::stod(io::format_double(v)) == v);
    CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("trace json round trip") {
    RunTrace t;
    t.algorithm_id = "asso";
    t.objective_id = "sphere_d2";
    t.seed = 42;
    t.best_per_iteration = {3, 2, 0.125};
    t.final_best = {{0.25, -0.5}, 0.125};
    const auto back = io::trace_from_json(io::to_json(t));
    CHECK(back.algorithm_id == t.algorithm_id);
    CHECK(back.seed == 42);
    CHECK(back.best_per_iteration == t.best_per_iteration);
    CHECK(back.final_best.position == t.final_best.position);
    CHECK(*back.final_best.fitness == 0.125);

    std::ostringstream csv;
    io::write_trace_csv(csv, t);
    CHECK(csv.str() == "iteration,best_fitness\n1,3\n2,2\n3,0.125\n");
}

TEST_CASE("config json round trip") {
    auto cfg = tiny_config();
    cfg.de_weight = 0.7;
    const auto back = io::config_from_json(io::to_json(cfg));
    CHECK(back.algorithms == cfg.algorithms);
    REQUIRE(back.objectives.size() == 2);
    CHECK(back.objectives[0].shift == Position{1e9});
    CHECK(back.objectives[1].dimension == 3);
    CHECK(back.repetitions == 3);
    CHECK(back.de_weight == 0.7);
}

TEST_CASE("config errors name the field") {
    auto j = io::to_json(tiny_config());
    j["populaton_size"] = 3;
    CHECK_THROWS_WITH_AS(io::config_from_json(j), doctest::Contains("populaton_size"), ConfigError);

    j = io::to_json(tiny_config());
    j["iterations"] = "many";
    CHECK_THROWS_WITH_AS(io::config_from_json(j), doctest::Contains("iterations"), ConfigError);

    j = io::to_json(tiny_config());
    j["de"]["scale"] = 1;
    CHECK_THROWS_WITH_AS(io::config_from_json(j), doctest::Contains("de.scale"), ConfigError);
}

TEST_CASE("overrides") {
    auto j = io::to_json(tiny_config());
    io::apply_override(j, "repetitions=7");
    io::apply_override(j, "de.weight=0.9");
    io::apply_override(j, "algorithms=[\"sso\",\"de\"]");
    const auto cfg = io::config_from_json(j);
    CHECK(cfg.repetitions == 7);
    CHECK(cfg.de_weight == 0.9);
    CHECK(cfg.algorithms == std::vector<std::string>{"sso", "de"});
    CHECK_THROWS_AS(io::apply_override(j, "repetitions"), ConfigError);
    CHECK_THROWS_AS(io::apply_override(j, "=3"), ConfigError);
    CHECK_THROWS_AS(io::apply_override(j, "iterations.x=3"), ConfigError);
}

TEST_CASE("result set persists and reloads") {
    const auto dir = fresh_dir("results");
    const auto results = harness::run_experiment(tiny_config());
    io::write_result_set(dir, results, false);
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "sphere_d2_s1e+09" / "report.json"));

    const auto manifest = io::read_json(dir / "manifest.json");
    CHECK(manifest.at("generator") == RngStream::generator_name);
    CHECK(manifest.at("cells").size() == 4);

    const auto loaded = io::load_result_set(dir);
    REQUIRE(loaded.cells.size() == results.cells.size());
    for (std::size_t i = 0; i < results.cells.size(); ++i) {
        const auto& a = results.cells[i];
        const auto& b = loaded.cells[i];
        CHECK(a.algorithm == b.algorithm);
        CHECK(a.abf == b.abf);
        CHECK(a.finals.values == b.finals.values);
        CHECK(a.evaluations == b.evaluations);
        for (std::size_t r = 0; r < a.traces.size(); ++r) {
            CHECK(a.traces[r].seed == b.traces[r].seed);
            CHECK(a.traces[r].final_best.position == b.traces[r].final_best.position);
        }
    }

    SUBCASE("overwrite guard") {
        CHECK_THROWS_AS(io::write_result_set(dir, results, false), OverwriteError);
        CHECK_NOTHROW(io::write_result_set(dir, results, true));
    }
    SUBCASE("byte-identical on rewrite") {
        const auto before = slurp(dir / "manifest.json");
        const auto traces = slurp(dir / "rastrigin_d3" / "traces_asso.csv");
        io::write_result_set(dir, harness::run_experiment(tiny_config()), true);
        CHECK(slurp(dir / "manifest.json") == before);
        CHECK(slurp(dir / "rastrigin_d3" / "traces_asso.csv") == traces);
    }
    SUBCASE("missing traces are reported") {
        fs::remove(dir / "rastrigin_d3" / "traces_asso.csv");
        CHECK_THROWS_AS(io::load_result_set(dir), IoError);
    }
    fs::remove_all(dir);
}

TEST_CASE("report csv is a square matrix") {
    const std::vector<stats::SampleSet> samples{{{1, 2, 3}, "a"}, {{4, 5, 6}, "b"}, {{7, 8, 9}, "c"}};
    std::ostringstream os;
    io::write_report_csv(os, stats::compare("f", samples));
    const auto text = os.str();
    CHECK(count(text, "\n") == 4);
    CHECK(text.rfind("algorithm,a,b,c\n", 0) == 0);
    CHECK(io::to_json(stats::compare("f", samples)).at("pairs").size() == 3);
}

TEST_CASE("abf svg") {
    const std::vector<plot::Series> curves{{"rs", {3, 2, 1}}, {"asso", {1, 1e-3, 0}}, {"sso", {5, 5, 4}}};
    const auto svg = plot::abf_svg("sphere", curves);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count(svg, "<polyline") == 3);
    CHECK(svg.find("data-series=\"asso\"") != std::string::npos);
    CHECK(svg.find("log-floor=1e-16") != std::string::npos);
    CHECK(plot::abf_svg("sphere", curves) == svg);
    CHECK(plot::abf_svg("sphere", curves, 1e-8).find("log-floor=1e-08") != std::string::npos);
}

TEST_CASE("box svg") {
    const std::vector<plot::Series> samples{{"rs", {1, 2, 3, 4, 100}}, {"asso", {0, 0, 0}}};
    const auto svg = plot::box_svg("sphere", samples);
    CHECK(count(svg, "class=\"box\"") == 2);
    CHECK(count(svg, "class=\"median\"") == 2);
    CHECK(count(svg, "class=\"outlier\"") == 1);
}

TEST_CASE("dynamics svg marks the leader and the start") {
    const auto d = harness::dynamics_probe("sso", Bounds::uniform(2, -100, 100), 3, 1, 8, 10);
    const auto svg = plot::dynamics_svg("sso", d.bounds, d.initial, d.snapshots, d.leader_index);
    CHECK(svg.find(">Start<") != std::string::npos);
    CHECK(count(svg, "class=\"leader\"") == 4);
    CHECK(svg.find("class=\"leader\" data-member=\"0\"") != std::string::npos);
    CHECK(svg == plot::dynamics_svg("sso", d.bounds, d.initial, d.snapshots, d.leader_index));
}
