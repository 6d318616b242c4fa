#include <benchmark/benchmark.h>

#include "twinbeam/twinbeam.hpp"

using namespace twinbeam;

static void BM_Gen3laUnified(benchmark::State& state) {
    const LightParams p = make_squashed(-0.2);
    for (auto _ : state) benchmark::DoNotOptimize(gen_3la_unified(p));
}
BENCHMARK(BM_Gen3laUnified);

static void BM_Gen3laSquashedDirect(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gen_3la_squashed_direct(-0.2));
}
BENCHMARK(BM_Gen3laSquashedDirect);

static void BM_SteadyState(benchmark::State& state) {
    const Generator g = state.range(0) == 2 ? gen_2la_unified(make_squeezed_max(0.1))
                                            : gen_3la_unified(make_squeezed_max(0.1));
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(g));
}
BENCHMARK(BM_SteadyState)->Arg(2)->Arg(3);

static void BM_EvolveExpm(benchmark::State& state) {
    const Generator g = gen_3la_unified(make_squashed(-0.5));
    const DensityMatrix rho0 = DensityMatrix::level(3, 3);
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(evolve(g, rho0, t));
}
BENCHMARK(BM_EvolveExpm)->Arg(1)->Arg(10)->Arg(50);

static void BM_EvolveRk4(benchmark::State& state) {
    const Generator g = gen_3la_unified(make_squashed(-0.5));
    const DensityMatrix rho0 = DensityMatrix::level(3, 3);
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(evolve_rk4(g, rho0, t));
}
BENCHMARK(BM_EvolveRk4)->Arg(1)->Arg(10)->Arg(50);

static void BM_PopulationScan(benchmark::State& state) {
    const auto grid = log_grid(1e-4, 0.2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            population_scan({LightKind::Squashed, LightKind::Squeezed, LightKind::Classical}, grid));
    }
}
BENCHMARK(BM_PopulationScan)->Arg(25)->Arg(200);

static void BM_InloopSpectrum(benchmark::State& state) {
    const FeedbackLoop loop{.gain = -1.0, .delay = 0.01, .response = ResponseSpec::one_pole(100.0)};
    const auto grid = default_frequency_grid(loop.response);
    for (auto _ : state) benchmark::DoNotOptimize(inloop_spectrum(loop, grid));
}
BENCHMARK(BM_InloopSpectrum);

BENCHMARK_MAIN();
