// bench_kernels.cpp — Dyson kernel integration and exact image evolution

#include <benchmark/benchmark.h>

#include "heisen/dyson.hpp"
#include "heisen/presets.hpp"

using namespace heisen;

static void bm_compute_kernels(benchmark::State& state) {
    const Index db = state.range(0);
    const int order = static_cast<int>(state.range(1));
    const ModelSpec m = presets::random_model(1, 2, db);
    const TimeGrid grid = TimeGrid::uniform(2.0, 16);
    for (auto _ : state) benchmark::DoNotOptimize(compute_kernels(m, order, grid));
}
BENCHMARK(bm_compute_kernels)->ArgsProduct({{2, 4, 8}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

static void bm_evolve_images_exact(benchmark::State& state) {
    const Index db = state.range(0);
    const ModelSpec m = presets::random_model(2, 2, db, 0.1);
    const Matrix o = presets::spin_x();
    const TimeGrid grid = TimeGrid::uniform(2.0, 16);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_images_exact(m, o, grid));
}
BENCHMARK(bm_evolve_images_exact)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
