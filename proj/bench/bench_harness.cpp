// Serial reference vs OpenMP run_experiment on the shifted 2-D sphere grid.
// Set OMP_NUM_THREADS to control the parallel arm.

#include <benchmark/benchmark.h>

#include "salp/harness.hpp"

namespace {

salp::harness::ExperimentConfig grid(std::size_t reps) {
    salp::harness::ExperimentConfig cfg;
    cfg.algorithms = {"rs", "sso", "sso-code", "asso"};
    cfg.objectives = {{"sphere", 2, {1e9}}, {"ackley", 2, {1e9}}};
    cfg.repetitions = reps;
    return cfg;
}

void BM_Serial(benchmark::State& state) {
    const auto cfg = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(salp::harness::run_experiment_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

void BM_OpenMP(benchmark::State& state) {
    const auto cfg = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(salp::harness::run_experiment(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

} // namespace

BENCHMARK(BM_Serial)->Arg(4)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Arg(4)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
