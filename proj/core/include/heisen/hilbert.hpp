// hilbert.hpp — Spaces, dense operators, tensor products, partial traces and propagators
//
// Index convention (fixed for the whole library): the full-space basis state
// |i alpha> with system index i and bath index alpha sits at row i * d_B + alpha.
// Every contraction, image extraction and reshaping relies on this flattening.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "heisen/errors.hpp"

namespace heisen {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};

// Default tolerances; hermiticity/trace/PSD checks are relative to max(1, ||A||_F).
namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double unit = 1e-9;
} // namespace tol

enum class Space { System, Bath, Full };

struct Dims {
    Index sys{1};
    Index bath{1};

    Index full() const noexcept { return sys * bath; }
    Index side(Space s) const noexcept {
        switch (s) {
        case Space::System: return sys;
        case Space::Bath: return bath;
        case Space::Full: return full();
        }
        return 0;
    }
    bool operator==(const Dims&) const = default;
};

struct SpaceTag {
    Space kind{Space::Full};
    Dims dims{};

    Index side() const noexcept { return dims.side(kind); }
};

std::string to_string(Space s);

// Throws DimensionError unless `m` is square with the side length implied by `tag`.
void require_space(const Matrix& m, const SpaceTag& tag, const std::string& what);
void require_square(const Matrix& m, const std::string& what);

struct Constants {
    double hbar{1.0};
    double lambda{0.0};

    // Throws std::invalid_argument for hbar <= 0.
    void validate() const;
};

double hermiticity_defect(const Matrix& a);
bool is_hermitian(const Matrix& a, double rel_tol = tol::herm);
void require_hermitian(const Matrix& a, const std::string& what);

Matrix identity(Index n);
Matrix commutator(const Matrix& a, const Matrix& b);

// Hermitian, unit-trace, positive semidefinite operator. Validated on construction.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix rho);

    const Matrix& matrix() const noexcept { return rho_; }
    Index dim() const noexcept { return rho_.rows(); }
    cplx operator()(Index r, Index c) const { return rho_(r, c); }

    static DensityMatrix maximally_mixed(Index n);
    static DensityMatrix pure(Index n, Index k);

private:
    Matrix rho_;
};

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // columns
};

// Eigendecomposition of a hermitian matrix; NonHermitianInput otherwise.
HermitianEigen hermitian_eigen(const Matrix& h);

// (a ⊗ b)[(i,α),(j,β)] = a[i,j] b[α,β].
Matrix tensor_product(const Matrix& a, const Matrix& b);

// result[i,j] = Σ_α x[(i,α),(j,α)]
Matrix partial_trace_bath(const Matrix& x, const Dims& d);

// tr_B{x (1_S ⊗ ρ_B)}
Matrix weighted_bath_trace(const Matrix& x, const DensityMatrix& rho_b);

// exp(-i h t / hbar) via hermitian eigendecomposition.
Matrix unitary_propagator(const Matrix& h, double t, double hbar);
Matrix unitary_propagator(const HermitianEigen& eig, double t, double hbar);

} // namespace heisen
