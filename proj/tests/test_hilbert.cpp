// test_hilbert.cpp — spaces, density matrices, tensor products, traces and propagators

#include <catch_amalgamated.hpp>

#include "heisen/hilbert.hpp"
#include "heisen/presets.hpp"
#include "oracles.hpp"

using namespace heisen;

namespace {

Matrix random_matrix(presets::Rng& rng, Index r, Index c) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = rng.complex_normal();
    return m;
}

} // namespace

TEST_CASE("tensor product follows the |i alpha> -> i*d_B + alpha convention") {
    presets::Rng rng(1);
    const Matrix a = random_matrix(rng, 2, 2);
    const Matrix b = random_matrix(rng, 3, 3);
    const Matrix ab = tensor_product(a, b);
    CHECK((ab - oracle::kron(a, b)).norm() < 1e-14);
    CHECK(std::abs(ab(1 * 3 + 2, 0 * 3 + 1) - a(1, 0) * b(2, 1)) < 1e-15);
}

TEST_CASE("partial trace and weighted bath trace agree with loops") {
    presets::Rng rng(2);
    const Dims d{3, 2};
    const Matrix x = random_matrix(rng, d.full(), d.full());
    Matrix expect = Matrix::Zero(3, 3);
    for (Index a = 0; a < 2; ++a) expect += oracle::block(x, 3, 2, a, a);
    CHECK((partial_trace_bath(x, d) - expect).norm() < 1e-13);

    const Matrix rho = presets::random_density(rng, 2);
    CHECK((weighted_bath_trace(x, DensityMatrix(rho)) - oracle::reduce(x, rho)).norm() < 1e-13);

    // tr_B{(A ⊗ B)(1 ⊗ ρ)} = A tr(Bρ)
    const Matrix a = random_matrix(rng, 3, 3), b = random_matrix(rng, 2, 2);
    const Matrix red = weighted_bath_trace(tensor_product(a, b), DensityMatrix(rho));
    CHECK((red - a * (b * rho).trace()).norm() < 1e-13);
}

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix::maximally_mixed(4));
    CHECK_NOTHROW(DensityMatrix::pure(3, 2));
    CHECK_THROWS_AS(DensityMatrix::pure(3, 3), IndexOutOfRange);

    Matrix bad = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix(bad), InvalidDensityMatrix);  // trace 2
    Matrix neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix(neg), InvalidDensityMatrix);
    Matrix nh(2, 2);
    nh << 0.5, 0.3, 0.0, 0.5;
    CHECK_THROWS_AS(DensityMatrix(nh), InvalidDensityMatrix);
    Matrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(DensityMatrix(rect), InvalidDensityMatrix);
}

TEST_CASE("dimension and hermiticity checks") {
    const Dims d{2, 3};
    CHECK_NOTHROW(require_space(Matrix::Zero(6, 6), {Space::Full, d}, "x"));
    CHECK_THROWS_AS(require_space(Matrix::Zero(2, 2), {Space::Full, d}, "x"), DimensionError);
    CHECK_THROWS_AS(require_space(Matrix::Zero(3, 2), {Space::Bath, d}, "x"), DimensionError);
    CHECK_THROWS_AS(commutator(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), DimensionError);

    Matrix nh(2, 2);
    nh << 0.0, 1.0, 0.0, 0.0;
    CHECK_FALSE(is_hermitian(nh));
    CHECK_THROWS_AS(require_hermitian(nh, "h"), NonHermitianInput);
    CHECK_THROWS_AS(hermitian_eigen(nh), NonHermitianInput);
    CHECK_THROWS_AS((Constants{0.0, 0.1}.validate()), std::invalid_argument);
}

TEST_CASE("unitary propagator matches an independent matrix exponential") {
    presets::Rng rng(3);
    const Matrix h = presets::random_hermitian(rng, 4);
    for (double t : {0.0, 0.3, 2.5}) {
        const Matrix u = unitary_propagator(h, t, 0.7);
        CHECK((u - oracle::expm_i(h, t, 0.7)).norm() < 1e-12);
        CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < tol::unit);
    }
}

TEST_CASE("hermitian eigendecomposition reconstructs its input") {
    presets::Rng rng(4);
    const Matrix h = presets::random_hermitian(rng, 5);
    const auto eig = hermitian_eigen(h);
    const Matrix back = eig.vectors * eig.values.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    CHECK((back - h).norm() < 1e-12);
    for (Index k = 1; k < 5; ++k) CHECK(eig.values(k) >= eig.values(k - 1));
}
