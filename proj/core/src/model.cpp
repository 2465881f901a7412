// model.cpp — ModelSpec validation and bath-basis canonicalisation

#include "heisen/model.hpp"

#include <algorithm>
#include <numeric>

namespace heisen {
namespace {

bool is_diagonal(const Matrix& m) {
    const double scale = std::max(1.0, m.norm());
    Matrix off = m;
    off.diagonal().setZero();
    return off.norm() <= tol::herm * scale;
}

// Lexicographic "less" on (re, im) of each component.
bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    constexpr double eps = 1e-12;
    for (Index k = 0; k < a.size(); ++k) {
        if (std::abs(a(k).real() - b(k).real()) > eps) return a(k).real() < b(k).real();
        if (std::abs(a(k).imag() - b(k).imag()) > eps) return a(k).imag() < b(k).imag();
    }
    return false;
}

} // namespace

HermitianEigen canonical_bath_eigenbasis(const Matrix& hb) {
    require_hermitian(hb, "model.hb");
    const Index n = hb.rows();
    if (is_diagonal(hb)) {
        std::vector<Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
            return hb(a, a).real() < hb(b, b).real();
        });
        HermitianEigen out{Eigen::VectorXd(n), Matrix::Zero(n, n)};
        for (Index k = 0; k < n; ++k) {
            const Index src = order[static_cast<std::size_t>(k)];
            out.values(k) = hb(src, src).real();
            out.vectors(src, k) = 1.0;
        }
        return out;
    }

    HermitianEigen eig = hermitian_eigen(hb);
    for (Index k = 0; k < n; ++k) {
        auto v = eig.vectors.col(k);
        Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        v *= std::conj(v(arg)) / std::abs(v(arg));
    }

    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (std::abs(eig.values(a) - eig.values(b)) > 1e-10 * scale) {
            return eig.values(a) < eig.values(b);
        }
        return lex_less(eig.vectors.col(a), eig.vectors.col(b));
    });
    HermitianEigen out{Eigen::VectorXd(n), Matrix(n, n)};
    for (Index k = 0; k < n; ++k) {
        out.values(k) = eig.values(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = eig.vectors.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

ModelSpec::ModelSpec(Matrix h0, Matrix hb, Matrix hi, DensityMatrix rho0, DensityMatrix rho_b,
                     Constants c, Dims d, Eigen::VectorXd energies, Matrix basis)
    : h0_(std::move(h0)),
      hb_(std::move(hb)),
      hi_(std::move(hi)),
      rho0_(std::move(rho0)),
      rho_b_(std::move(rho_b)),
      constants_(c),
      dims_(d),
      bath_energies_(std::move(energies)),
      bath_basis_(std::move(basis)) {}

ModelSpec ModelSpec::create(Matrix h0, Matrix hb, Matrix hi, Matrix rho0, Matrix rho_b,
                            Constants constants) {
    constants.validate();
    require_square(h0, "model.h0");
    require_square(hb, "model.hb");
    const Dims d{h0.rows(), hb.rows()};
    if (d.sys < 1 || d.bath < 1) throw DimensionError("model: empty system or bath space");
    require_space(hi, {Space::Full, d}, "model.hi");
    require_space(rho0, {Space::System, d}, "model.rho0");
    require_space(rho_b, {Space::Bath, d}, "model.rho_b");
    require_hermitian(h0, "model.h0");
    require_hermitian(hb, "model.hb");
    require_hermitian(hi, "model.hi");

    DensityMatrix rho0_checked(std::move(rho0));
    DensityMatrix rho_b_checked(rho_b);

    HermitianEigen bath = canonical_bath_eigenbasis(hb);
    const Matrix& v = bath.vectors;
    const Matrix lift = tensor_product(identity(d.sys), v);

    Matrix hb_work = bath.values.cast<cplx>().asDiagonal();
    Matrix hi_work = lift.adjoint() * hi * lift;
    hi_work = 0.5 * (hi_work + hi_work.adjoint()).eval();
    Matrix rho_b_work = v.adjoint() * rho_b * v;
    rho_b_work = 0.5 * (rho_b_work + rho_b_work.adjoint()).eval();

    return ModelSpec(std::move(h0), std::move(hb_work), std::move(hi_work),
                     std::move(rho0_checked), DensityMatrix(std::move(rho_b_work)), constants, d,
                     std::move(bath.values), v);
}

ModelSpec ModelSpec::with_lambda(double lambda) const {
    ModelSpec out = *this;
    out.constants_.lambda = lambda;
    out.constants_.validate();
    return out;
}

} // namespace heisen
