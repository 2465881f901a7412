// model.hpp — System ⊗ bath model: H = H0 + H_B + λ H_I with product initial state ρ0 ⊗ ρ_B

#pragma once

#include <vector>

#include "heisen/hilbert.hpp"

namespace heisen {

// A validated model expressed in the working bath basis, which is the
// eigenbasis of H_B with ascending energies. create() rotates a non-diagonal
// H_B (and ρ_B, H_I with it); bath_basis() maps working states back to input
// states column by column.
class ModelSpec {
public:
    static ModelSpec create(Matrix h0, Matrix hb, Matrix hi, Matrix rho0, Matrix rho_b,
                            Constants constants);

    const Matrix& h0() const noexcept { return h0_; }
    const Matrix& hb() const noexcept { return hb_; }
    const Matrix& hi() const noexcept { return hi_; }
    const DensityMatrix& rho0() const noexcept { return rho0_; }
    const DensityMatrix& rho_b() const noexcept { return rho_b_; }
    const Constants& constants() const noexcept { return constants_; }
    double hbar() const noexcept { return constants_.hbar; }
    double lambda() const noexcept { return constants_.lambda; }
    const Dims& dims() const noexcept { return dims_; }
    const Eigen::VectorXd& bath_energies() const noexcept { return bath_energies_; }
    const Matrix& bath_basis() const noexcept { return bath_basis_; }

    ModelSpec with_lambda(double lambda) const;

private:
    ModelSpec(Matrix h0, Matrix hb, Matrix hi, DensityMatrix rho0, DensityMatrix rho_b,
              Constants c, Dims d, Eigen::VectorXd energies, Matrix basis);

    Matrix h0_;
    Matrix hb_;
    Matrix hi_;
    DensityMatrix rho0_;
    DensityMatrix rho_b_;
    Constants constants_;
    Dims dims_;
    Eigen::VectorXd bath_energies_;
    Matrix bath_basis_;
};

// Deterministic eigenbasis of a bath Hamiltonian: ascending energies, phases
// fixed so the largest component of each vector is real positive, and
// degenerate vectors ordered lexicographically. Diagonal inputs are only permuted.
HermitianEigen canonical_bath_eigenbasis(const Matrix& hb);

} // namespace heisen
