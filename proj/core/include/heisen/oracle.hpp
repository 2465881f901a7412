// oracle.hpp — Exact full-space reference: Heisenberg evolution, N-point reduced operators, images
//
// Nothing here is approximate. Every perturbative routine in the library is
// checked against these functions.

#pragma once

#include <utility>
#include <vector>

#include "heisen/model.hpp"

namespace heisen {

// H0 ⊗ 1_B + 1_S ⊗ H_B + λ H_I
Matrix total_hamiltonian(const ModelSpec& m);

// Caches the eigendecomposition of the total Hamiltonian so repeated
// evolutions at different times stay cheap.
class ExactEvolver {
public:
    explicit ExactEvolver(const ModelSpec& m);

    // e^{iHt/ħ} (o0 ⊗ 1_B) e^{-iHt/ħ}
    Matrix evolve(const Matrix& o0, double t) const;
    // e^{iHt/ħ} x e^{-iHt/ħ} for a full-space x
    Matrix evolve_full(const Matrix& x, double t) const;
    // tr_B{O(t) ρ_B}
    Matrix one_point(const Matrix& o0, double t) const;
    // tr_B{O_1(t_1)…O_N(t_N) ρ_B}, product in sequence order
    Matrix npoint(const std::vector<std::pair<Matrix, double>>& ops) const;

    const ModelSpec& model() const noexcept { return model_; }

private:
    ModelSpec model_;
    HermitianEigen eig_;
};

Matrix heisenberg_evolve_exact(const ModelSpec& m, const Matrix& o0, double t);

Matrix npoint_reduced_exact(const ModelSpec& m, const std::vector<std::pair<Matrix, double>>& ops);

// result[i,j] = x[(i,α),(j,β)]
Matrix image_extract_exact(const Matrix& x, const Dims& d, Index alpha, Index beta);

// tr_S{o_s ρ0}
cplx expectation(const Matrix& o_s, const DensityMatrix& rho0);

} // namespace heisen
