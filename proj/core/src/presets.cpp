// presets.cpp — Preset models and the portable RNG

#include "heisen/presets.hpp"

#include <cmath>
#include <numbers>

namespace heisen::presets {

Matrix spin_x(double hbar) {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return 0.5 * hbar * m;
}

Matrix spin_y(double hbar) {
    Matrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return 0.5 * hbar * m;
}

Matrix spin_z(double hbar) {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return 0.5 * hbar * m;
}

TwoQubit two_qubit(double c, double lambda, double hbar) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("two_qubit: c must lie in [0, 1]");
    const Matrix sx = spin_x(hbar), sy = spin_y(hbar), sz = spin_z(hbar);
    const Matrix hi = tensor_product(sx, sx) + tensor_product(sy, sy) + tensor_product(sz, sz);
    Matrix rho_b = Matrix::Zero(2, 2);
    rho_b(0, 0) = 1.0 - c;
    rho_b(1, 1) = c;
    ModelSpec m = ModelSpec::create(Matrix::Zero(2, 2), Matrix::Zero(2, 2), hi, identity(2) / 2.0,
                                    rho_b, Constants{hbar, lambda});
    return {std::move(m), sx, sy, sz};
}

ModelSpec dephasing_bath(double lambda, double hbar, const DephasingBathParams& p) {
    constexpr Index modes = 7;
    // Golub–Welsch for the probabilists' Hermite weight e^{-x²/2}
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(modes, modes);
    for (Index k = 1; k < modes; ++k) {
        jac(k, k - 1) = std::sqrt(static_cast<double>(k));
        jac(k - 1, k) = jac(k, k - 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    const Eigen::VectorXd nodes = es.eigenvalues();
    const Eigen::VectorXd weights = es.eigenvectors().row(0).array().square().transpose();

    const Index db = modes + 1;
    Matrix hb = Matrix::Zero(db, db);
    Matrix s = Matrix::Zero(db, db);
    for (Index k = 0; k < modes; ++k) {
        hb(k + 1, k + 1) = p.center + p.spread * nodes(k);
        const double g = std::sqrt(p.coupling * weights(k));
        s(0, k + 1) = g;
        s(k + 1, 0) = g;
    }
    Matrix sz(2, 2);
    sz << 1.0, 0.0, 0.0, -1.0;
    Matrix rho_b = Matrix::Zero(db, db);
    rho_b(0, 0) = 1.0;
    return ModelSpec::create(0.5 * p.delta * sz, hb, tensor_product(sz, s), identity(2) / 2.0, rho_b,
                             Constants{hbar, lambda});
}

Rng::Rng(std::uint64_t seed) : state_(seed) {}

// splitmix64
std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Matrix random_hermitian(Rng& rng, Index n) {
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
    }
    Matrix h = 0.5 * (a + a.adjoint());
    const double radius = hermitian_eigen(h).values.cwiseAbs().maxCoeff();
    return radius > 0.0 ? Matrix(h / radius) : h;
}

Matrix random_density(Rng& rng, Index n) {
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
    }
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

ModelSpec random_model(std::uint64_t seed, Index d_s, Index d_b, double lambda, double hbar) {
    if (d_s < 1 || d_b < 1) throw DimensionError("random_model: dimensions must be positive");
    Rng rng(seed);
    Matrix h0 = random_hermitian(rng, d_s);
    Matrix hb = random_hermitian(rng, d_b);
    Matrix hi = random_hermitian(rng, d_s * d_b);
    Matrix rho0 = random_density(rng, d_s);
    Matrix rho_b = random_density(rng, d_b);
    return ModelSpec::create(std::move(h0), std::move(hb), std::move(hi), std::move(rho0),
                             std::move(rho_b), Constants{hbar, lambda});
}

std::vector<PresetInfo> preset_list() {
    return {
        {"two_qubit", "two spins, H_I = S1.S2, H0 = H_B = 0, rho_B = diag(1-c, c); parameter c"},
        {"dephasing_bath", "qubit dephased by an 8-level bath with a Gaussian-like correlation envelope"},
    };
}

} // namespace heisen::presets
