// bench_series.cpp — One-point series, image lifting, star products and partitions

#include <benchmark/benchmark.h>

#include "heisen/npoint.hpp"
#include "heisen/presets.hpp"

using namespace heisen;

namespace {

struct Fixture {
    ModelSpec model;
    KernelSet ks;
    Matrix o;

    Fixture(Index db, int order)
        : model(presets::random_model(3, 2, db)),
          ks(compute_kernels(model, order, TimeGrid::uniform(1.0, 8))),
          o(presets::spin_x()) {}
};

} // namespace

static void bm_one_point_operator(benchmark::State& state) {
    const int order = static_cast<int>(state.range(1));
    const Fixture f(state.range(0), order);
    for (auto _ : state) benchmark::DoNotOptimize(one_point_operator(f.o, {order, 0.1}, f.ks, f.model.rho_b()));
}
BENCHMARK(bm_one_point_operator)->ArgsProduct({{2, 4, 8}, {1, 2, 3}});

static void bm_image_from_one_point(benchmark::State& state) {
    const int order = static_cast<int>(state.range(1));
    const Fixture f(state.range(0), order);
    const std::size_t k = f.ks.grid().size() - 1;
    const Matrix os = one_point_operator(f.o, {order, 0.1}, f.ks, f.model.rho_b()).values[k];
    for (auto _ : state) benchmark::DoNotOptimize(image_from_one_point(os, {order, 0.1}, f.ks, f.model.rho_b(), k));
}
BENCHMARK(bm_image_from_one_point)->ArgsProduct({{2, 4, 8}, {1, 2, 3}});

static void bm_star_product(benchmark::State& state) {
    const Fixture f(4, 1);
    const SeriesTruncation trunc{1, 0.1};
    const auto traj = one_point_operator(f.o, trunc, f.ks, f.model.rho_b());
    std::vector<StarFactor> factors;
    for (std::int64_t n = 0; n < state.range(0); ++n) {
        const double t = f.ks.grid()[static_cast<std::size_t>(n + 1)];
        factors.push_back({traj.at(t), t, true});
    }
    for (auto _ : state) benchmark::DoNotOptimize(star_product(factors, trunc, f.ks, f.model.rho_b()));
}
BENCHMARK(bm_star_product)->DenseRange(2, 5);

static void bm_expand_image_by_partitions(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    const Fixture f(3, order);
    const std::size_t k = f.ks.grid().size() - 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_image_by_partitions(f.o, order, f.ks, f.model.rho_b(), 0.1, k));
    }
}
BENCHMARK(bm_expand_image_by_partitions)->DenseRange(1, 3);
