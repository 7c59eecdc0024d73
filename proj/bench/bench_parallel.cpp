// Serial reference vs OpenMP kernels for parameter sweeps and trajectory ensembles.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>
#include <vector>

#include "ecoepi/sweep.hpp"

using namespace ecoepi;

namespace {

ScenarioConfig scenario() {
    ScenarioConfig cfg;
    cfg.params = presets::case_i();
    return cfg;
}

std::vector<FullState> starts(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::vector<FullState> out(n);
    for (auto& x : out) x = {u(rng), u(rng), u(rng), u(rng)};
    return out;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto grid = sweep_grid(0.0, 1.2, static_cast<int>(state.range(0)));
    const auto cfg = scenario();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(cfg, "phi", grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto grid = sweep_grid(0.0, 1.2, static_cast<int>(state.range(0)));
    const auto cfg = scenario();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_parallel(cfg, "phi", grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_EnsembleSerial(benchmark::State& state) {
    const auto x0 = starts(static_cast<std::size_t>(state.range(0)));
    IntegratorConfig cfg;
    cfg.t_end = 200;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_ensemble_serial(presets::case_ii(), x0, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EnsembleParallel(benchmark::State& state) {
    const auto x0 = starts(static_cast<std::size_t>(state.range(0)));
    IntegratorConfig cfg;
    cfg.t_end = 200;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_ensemble_parallel(presets::case_ii(), x0, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleSerial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
