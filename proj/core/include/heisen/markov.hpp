// markov.hpp — Markovian limit: operator-Schmidt split of H_I, bath assumptions,
// Bohr decomposition, spectral coefficients J^{ij}(ω) and the adjoint Lindblad generator

#pragma once

#include <limits>
#include <vector>

#include "heisen/model.hpp"
#include "heisen/ode.hpp"

namespace heisen {

struct InteractionTerm {
    Matrix r;  // system, hermitian, unit Frobenius norm
    Matrix s;  // bath, hermitian
};

struct InteractionDecomposition {
    Dims dims{};
    std::vector<InteractionTerm> terms;

    // Σ_i R_i ⊗ S_i
    Matrix reconstruct() const;
};

// SVD of the real coefficient matrix of H_I in hermitian operator bases on
// both factors. Terms with singular value < 1e-12·σ_max are dropped.
InteractionDecomposition decompose_interaction(const Matrix& hi, const Dims& d);

// R̃(t) = U0 R U0† = Σ_ω e^{iωt} A_ω with U0 = e^{-iH0t/ħ}
struct BohrDecomposition {
    std::vector<double> frequencies;  // ascending, distinct
    std::vector<Matrix> coefficients;

    Matrix evaluate(double t) const;
};

BohrDecomposition bohr_decomposition(const Matrix& r, const Matrix& h0, double hbar = 1.0);

// C_ij(τ) = ⟨S̃ⁱ(0) S̃ʲ(-τ)⟩_B with S̃(t)_{αβ} = S_{αβ} e^{-i(E_α-E_β)t/ħ}
cplx bath_correlation(const ModelSpec& m, const InteractionDecomposition& dec, std::size_t i,
                      std::size_t j, double tau);

struct MarkovReport {
    std::vector<double> sample_times;
    // max_t |tr_B{S̃ⁱ(t)ρ_B}| per term, and the same for its central-difference derivative
    std::vector<double> first_moment;
    std::vector<double> first_moment_rate;
    // max over sampled t, τ of |⟨S̃ⁱ(t)S̃ʲ(t-τ)⟩ − ⟨S̃ⁱ(0)S̃ʲ(-τ)⟩|
    double stationarity_defect{0.0};
    // (τ, max_ij |C_ij(τ)|)
    std::vector<std::pair<double, double>> decay_profile;
    double decay_time{std::numeric_limits<double>::infinity()};
    bool coupling_commutes_with_h0{false};
    double horizon{0.0};
    double decay_threshold{0.0};

    bool first_moment_ok{false};
    bool stationary_ok{false};
    bool decays{false};
};

struct MarkovCheckOptions {
    std::size_t samples{64};
    double tolerance{1e-10};
};

MarkovReport check_markov_assumptions(const ModelSpec& m, const InteractionDecomposition& dec,
                                      double horizon, double decay_threshold,
                                      const MarkovCheckOptions& opts = {});

struct SpectralOptions {
    double horizon{50.0};
    double tolerance{1e-8};
    // Regulator e^{-ητ}; with extrapolate, J(η→0) ≈ 2J(η/2) − J(η).
    double eta{0.0};
    bool extrapolate{false};
};

struct SpectralCoefficients {
    std::size_t terms{0};
    std::vector<double> frequencies;
    std::vector<cplx> values;  // (i, j, ω) row-major
    double horizon{0.0};
    double tolerance{0.0};
    // |J(2T) − J(T)| maximised over all entries
    double defect{0.0};
    bool converged{false};
    SpectralOptions options{};

    cplx operator()(std::size_t i, std::size_t j, double omega) const;
    cplx& at(std::size_t i, std::size_t j, std::size_t w);
    cplx at(std::size_t i, std::size_t j, std::size_t w) const;
    // NonConvergent when the horizon check failed
    void require_converged() const;
};

// J^{ij}(ω) = ∫_0^T e^{-iωτ} e^{-ητ} C_ij(τ) dτ by adaptive Gauss–Kronrod quadrature
SpectralCoefficients spectral_coefficients(const ModelSpec& m, const InteractionDecomposition& dec,
                                           std::vector<double> freqs, const SpectralOptions& opts = {});

// Union of all Bohr frequencies, merged within the relative tolerance used by bohr_decomposition
std::vector<double> bohr_frequencies(const std::vector<BohrDecomposition>& bd);

struct LindbladOptions {
    // Use (i/ħ)H0·O in place of (i/ħ)[H0, O]
    bool one_sided_free_term{false};
};

// (i/ħ)[H0,O] + (iλ/ħ)² Σ_{ωω'} Σ_ij J^{ij}(ω){A^{i†}_ω A^j_{ω'} O − A^{i†}_ω O A^j_{ω'}} + h.c.
Matrix lindblad_rhs(const Matrix& o_s, const std::vector<BohrDecomposition>& bd,
                    const SpectralCoefficients& sc, const Matrix& h0, const Constants& c,
                    const LindbladOptions& opts = {});

std::vector<Matrix> evolve_lindblad(const Matrix& o0, const std::vector<BohrDecomposition>& bd,
                                    const SpectralCoefficients& sc, const Matrix& h0,
                                    const Constants& c, const TimeGrid& grid,
                                    const ode::Options& ode_opts = {},
                                    const LindbladOptions& opts = {});

// Upper bound on ‖one_point_rhs(O_S, order 2) − lindblad_rhs(O_S)‖_F at time t.
// Finite only when every Rⁱ commutes with H0; built from the first moment,
// the stationarity defect, the correlator tail ∫_t^T |C_ij| and the regulator
// offset |J_ij(0) − ∫_0^T C_ij|.
double markov_rhs_defect_bound(const ModelSpec& m, const InteractionDecomposition& dec,
                               const MarkovReport& report, const SpectralCoefficients& sc,
                               double o_norm, double t);

} // namespace heisen
