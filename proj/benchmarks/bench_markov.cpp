// bench_markov.cpp — Spectral coefficients and adjoint Lindblad evolution

#include <benchmark/benchmark.h>

#include "heisen/markov.hpp"
#include "heisen/presets.hpp"

using namespace heisen;

namespace {

struct Pieces {
    ModelSpec model = presets::dephasing_bath(0.1);
    InteractionDecomposition dec = decompose_interaction(model.hi(), model.dims());
    std::vector<BohrDecomposition> bd;

    Pieces() {
        for (const auto& t : dec.terms) bd.push_back(bohr_decomposition(t.r, model.h0(), model.hbar()));
    }
};

} // namespace

static void bm_spectral_coefficients(benchmark::State& state) {
    const Pieces p;
    SpectralOptions so;
    so.horizon = presets::kDephasingQuietWindow;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_coefficients(p.model, p.dec, bohr_frequencies(p.bd), so));
    }
}
BENCHMARK(bm_spectral_coefficients)->Unit(benchmark::kMillisecond);

static void bm_evolve_lindblad(benchmark::State& state) {
    const Pieces p;
    SpectralOptions so;
    so.horizon = presets::kDephasingQuietWindow;
    const auto sc = spectral_coefficients(p.model, p.dec, bohr_frequencies(p.bd), so);
    Matrix sp = Matrix::Zero(2, 2);
    sp(0, 1) = 1.0;
    const TimeGrid grid = TimeGrid::uniform(10.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_lindblad(sp, p.bd, sc, p.model.h0(), p.model.constants(), grid));
    }
}
BENCHMARK(bm_evolve_lindblad)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
