#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "salp/harness.hpp"

using namespace salp;
using namespace salp::harness;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.algorithms = {"rs", "sso", "sso-code", "asso"};
    cfg.objectives = {{"sphere", 2, {1e9}}, {"ackley", 2, {1e9}}, {"alpine", 2, {1e9}}, {"rosenbrock", 2, {1e9}}};
    cfg.population_size = 10;
    cfg.iterations = 20;
    cfg.repetitions = 30;
    return cfg;
}

bool same_traces(const ResultSet& a, const ResultSet& b) {
    if (a.cells.size() != b.cells.size()) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        const auto& x = a.cells[i];
        const auto& y = b.cells[i];
        if (x.algorithm != y.algorithm || x.objective != y.objective || x.traces.size() != y.traces.size()) return false;
        for (std::size_t r = 0; r < x.traces.size(); ++r) {
            if (x.traces[r].seed != y.traces[r].seed) return false;
            if (x.traces[r].best_per_iteration != y.traces[r].best_per_iteration) return false;
            if (x.traces[r].final_best.position != y.traces[r].final_best.position) return false;
        }
        if (x.abf != y.abf || x.evaluations != y.evaluations) return false;
    }
    return true;
}

} // namespace

TEST_CASE("objective labels") {
    CHECK(ObjectiveEntry{"sphere", 2, {1e9}}.label() == "sphere_d2_s1e+09");
    CHECK(ObjectiveEntry{"ackley", 10, {}}.label() == "ackley_d10");
    const auto spec = ObjectiveEntry{"sphere", 3, {5}}.build(1);
    CHECK(spec.dimension == 3);
    CHECK(spec(Position{5, 5, 5}) == 0.0);
}

TEST_CASE("config validation names the offender") {
    auto cfg = small_config();
    cfg.algorithms.push_back("pso");
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("pso") != std::string::npos);
    }

    cfg = small_config();
    cfg.objectives.push_back({"griewank", 2, {}});
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("griewank"), ConfigError);

    cfg = small_config();
    cfg.repetitions = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("4 x 4 x 30 experiment") {
    const auto cfg = small_config();
    const auto results = run_experiment(cfg);
    std::size_t traces = 0;
    for (const auto& c : results.cells) traces += c.traces.size();
    CHECK(results.cells.size() == 16);
    CHECK(traces == 480);

    const auto& cell = results.cell("asso", "sphere_d2_s1e+09");
    CHECK(cell.abf.size() == cfg.iterations);
    CHECK(cell.finals.values.size() == 30);
    for (std::size_t r = 0; r < 30; ++r) CHECK(cell.traces[r].seed == cfg.seed_for(r));
    CHECK(results.cells_for("ackley_d2_s1e+09").size() == 4);
    CHECK_THROWS_AS(results.cell("de", "sphere_d2_s1e+09"), ConfigError);

    SUBCASE("parallel matches the serial reference") { CHECK(same_traces(results, run_experiment_serial(cfg))); }
    SUBCASE("rerun is identical") { CHECK(same_traces(results, run_experiment(cfg))); }
    SUBCASE("single repetition reproduces from its seed") {
        const auto again = run_repetition(cfg, "sso", 2, 17);
        CHECK(again.best_per_iteration == results.cell("sso", "alpine_d2_s1e+09").traces[17].best_per_iteration);
    }
    SUBCASE("comparison per objective") {
        const auto report = compare_objective(results, "sphere_d2_s1e+09");
        CHECK(report.pairs.size() == 6);
        CHECK(report.correction_factor == 6);
    }
}

TEST_CASE("evaluation budget") {
    ExperimentConfig cfg;
    cfg.algorithms = {"rs", "sso", "asso", "de"};
    cfg.objectives = {{"sphere", 3, {}}, {"random", 2, {}}};
    cfg.population_size = 12;
    cfg.iterations = 15;
    cfg.repetitions = 3;
    const auto results = run_experiment(cfg);
    for (const auto& c : results.cells) {
        const std::size_t expected = c.algorithm == "rs" ? 12 * 15 : 12 * 16;
        for (auto e : c.evaluations) CHECK(e == expected);
    }
}

TEST_CASE("shift probe: asso is translation-equivariant") {
    const auto report = shift_invariance_probe("asso", "sphere", 1e3, 1);
    CHECK(report.deviation_per_iteration.size() == 101);
    CHECK(report.max_deviation <= 1e-6 * 1e3);
}

TEST_CASE("shift probe: rs depends only on the box geometry") {
    for (double s : {10.0, 1e3, 1e6}) {
        const auto report = shift_invariance_probe("rs", "sphere", s, 3);
        CAPTURE(s);
        CHECK(std::abs(report.shifted_final - report.base_final) <= 1e-6 * std::max(1.0, report.base_final));
    }
}

TEST_CASE("shift probe: published rule is not equivariant") {
    const auto report = shift_invariance_probe("sso", "sphere", 1e9, 1);
    CHECK(report.max_deviation > 1.0);
}

TEST_CASE("shifted sphere at 1e9: sso median is worse than rs") {
    std::vector<double> sso, rs;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto a = shift_invariance_probe("sso", "sphere", 1e9, seed);
        const auto b = shift_invariance_probe("rs", "sphere", 1e9, seed);
        sso.push_back(a.shifted_final);
        rs.push_back(b.shifted_final);
    }
    CHECK(stats::median(sso) > stats::median(rs));
}

TEST_CASE("dynamics probe") {
    const auto bounds = Bounds::uniform(2, -100, 100);
    const auto d = dynamics_probe("sso", bounds, 10, 1);
    CHECK(d.initial.size() == 50);
    REQUIRE(d.snapshots.size() == 10);
    for (const auto& s : d.snapshots) {
        CHECK(s.size() == 50);
        for (const auto& p : s) CHECK(p.size() == 2);
    }
    CHECK(d.leader_index == 0);
    CHECK(dynamics_probe("sso-code", bounds, 1, 1).leader_index == 24);

    CHECK_THROWS_AS(dynamics_probe("sso", Bounds::uniform(2, -100, 50), 10, 1), ConfigError);
    CHECK_THROWS_AS(dynamics_probe("rs", bounds, 10, 1), ConfigError);
}

TEST_CASE("bounce probe") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CHECK(bounce_probe(7, 100, seed).fraction() == 1.0);
        CHECK(bounce_probe(8, 100, seed).fraction() == 1.0);
        CHECK(bounce_probe(0, 100, seed).fraction() < 1.0);
    }
    const auto b = bounce_probe(7, 10, 1);
    CHECK(b.stats.coordinate_updates == 10 * 1 * 2);
}
