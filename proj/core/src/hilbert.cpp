// hilbert.cpp — Dense operator algebra on system ⊗ bath spaces

#include "heisen/hilbert.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heisen {

std::string to_string(Space s) {
    switch (s) {
    case Space::System: return "system";
    case Space::Bath: return "bath";
    case Space::Full: return "full";
    }
    return "?";
}

void require_square(const Matrix& m, const std::string& what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(what + ": matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected square");
    }
}

void require_space(const Matrix& m, const SpaceTag& tag, const std::string& what) {
    require_square(m, what);
    if (tag.dims.sys < 1 || tag.dims.bath < 1) {
        throw DimensionError(what + ": space dimensions must be positive");
    }
    if (m.rows() != tag.side()) {
        throw DimensionError(what + ": " + to_string(tag.kind) + " operator must have side " +
                             std::to_string(tag.side()) + ", got " + std::to_string(m.rows()));
    }
}

void Constants::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("Constants: hbar must be positive and finite");
    }
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("Constants: lambda must be finite");
    }
}

double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).norm() / std::max(1.0, a.norm());
}

bool is_hermitian(const Matrix& a, double rel_tol) {
    return a.rows() == a.cols() && hermiticity_defect(a) <= rel_tol;
}

void require_hermitian(const Matrix& a, const std::string& what) {
    require_square(a, what);
    if (!is_hermitian(a)) {
        throw NonHermitianInput(what + ": not hermitian");
    }
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

Matrix commutator(const Matrix& a, const Matrix& b) {
    require_square(a, "commutator");
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("commutator: operand dimensions differ");
    }
    return a * b - b * a;
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
        throw InvalidDensityMatrix("density matrix must be square and non-empty");
    }
    const double scale = std::max(1.0, rho_.norm());
    if ((rho_ - rho_.adjoint()).norm() > tol::herm * scale) {
        throw InvalidDensityMatrix("density matrix is not hermitian");
    }
    if (std::abs(rho_.trace() - cplx{1.0, 0.0}) > tol::trace * scale) {
        throw InvalidDensityMatrix("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd * scale) {
        throw InvalidDensityMatrix("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
    return DensityMatrix(identity(n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::pure(Index n, Index k) {
    if (k < 0 || k >= n) throw IndexOutOfRange("DensityMatrix::pure: level out of range");
    Matrix rho = Matrix::Zero(n, n);
    rho(k, k) = 1.0;
    return DensityMatrix(std::move(rho));
}

HermitianEigen hermitian_eigen(const Matrix& h) {
    require_hermitian(h, "hermitian_eigen");
    // Symmetrise so rounding-level anti-hermitian parts do not leak into the solver.
    const Matrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigen: eigen decomposition failed");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    require_square(a, "tensor_product(lhs)");
    require_square(b, "tensor_product(rhs)");
    return Eigen::kroneckerProduct(a, b).eval();
}

Matrix partial_trace_bath(const Matrix& x, const Dims& d) {
    require_space(x, {Space::Full, d}, "partial_trace_bath");
    Matrix out = Matrix::Zero(d.sys, d.sys);
    for (Index i = 0; i < d.sys; ++i) {
        for (Index j = 0; j < d.sys; ++j) {
            cplx s{};
            for (Index a = 0; a < d.bath; ++a) s += x(i * d.bath + a, j * d.bath + a);
            out(i, j) = s;
        }
    }
    return out;
}

Matrix weighted_bath_trace(const Matrix& x, const DensityMatrix& rho_b) {
    require_square(x, "weighted_bath_trace");
    const Index db = rho_b.dim();
    if (x.rows() % db != 0) {
        throw DimensionError("weighted_bath_trace: full dimension not divisible by bath dimension");
    }
    const Dims d{x.rows() / db, db};
    return partial_trace_bath(x * tensor_product(identity(d.sys), rho_b.matrix()), d);
}

Matrix unitary_propagator(const HermitianEigen& eig, double t, double hbar) {
    const Eigen::VectorXcd phases =
        (eig.values.cast<cplx>() * (-kI * t / hbar)).array().exp().matrix();
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Matrix unitary_propagator(const Matrix& h, double t, double hbar) {
    return unitary_propagator(hermitian_eigen(h), t, hbar);
}

} // namespace heisen
