// test_oracle.cpp — exact Heisenberg evolution, N-point operators and image extraction

#include <catch_amalgamated.hpp>

#include "heisen/oracle.hpp"
#include "heisen/presets.hpp"
#include "oracles.hpp"

using namespace heisen;

TEST_CASE("model construction validates its inputs") {
    const Matrix z2 = Matrix::Zero(2, 2);
    const Matrix rho = identity(2) / 2.0;
    Matrix nh = z2;
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(ModelSpec::create(nh, z2, Matrix::Zero(4, 4), rho, rho, {}), NonHermitianInput);
    CHECK_THROWS_AS(ModelSpec::create(z2, Matrix::Zero(3, 3), Matrix::Zero(4, 4), rho, rho, {}), DimensionError);
    CHECK_THROWS_AS(ModelSpec::create(z2, z2, Matrix::Zero(6, 6), rho, rho, {}), DimensionError);
    CHECK_THROWS_AS(ModelSpec::create(z2, z2, Matrix::Zero(4, 4), rho, identity(2), {}), InvalidDensityMatrix);
}

TEST_CASE("non-diagonal bath Hamiltonians are rotated to their eigenbasis") {
    const ModelSpec m = presets::random_model(11, 2, 3, 0.2);
    const Matrix& hb = m.hb();
    CHECK((hb - Matrix(hb.diagonal().asDiagonal())).norm() < 1e-12);
    // Rotation must not change any physical prediction.
    presets::Rng rng(5);
    const Matrix o = presets::random_hermitian(rng, 2);
    const ExactEvolver ex(m);
    CHECK((ex.one_point(o, 0.9) - oracle::one_point(m, o, 0.9)).norm() < 1e-11);
}

TEST_CASE("exact evolution agrees with an independent exponential") {
    const ModelSpec m = presets::random_model(42, 2, 3, 0.3);
    presets::Rng rng(6);
    const Matrix o = presets::random_hermitian(rng, 2);
    const ExactEvolver ex(m);
    for (double t : {0.0, 0.5, 3.0}) {
        CHECK((ex.evolve(o, t) - oracle::heisenberg(m, o, t)).norm() < 1e-11);
        CHECK((heisenberg_evolve_exact(m, o, t) - oracle::heisenberg(m, o, t)).norm() < 1e-11);
    }
    CHECK((ex.one_point(o, 0.0) - o).norm() < 1e-13);
    CHECK_THROWS_AS(ex.evolve(o, -1.0), std::invalid_argument);
}

TEST_CASE("N-point reduced operators") {
    const ModelSpec m = presets::random_model(7, 2, 2, 0.5);
    presets::Rng rng(8);
    const Matrix a = presets::random_hermitian(rng, 2), b = presets::random_hermitian(rng, 2);
    const std::vector<std::pair<Matrix, double>> ops{{a, 0.4}, {b, 1.3}, {a, 0.2}};
    CHECK((npoint_reduced_exact(m, ops) - oracle::npoint(m, ops)).norm() < 1e-11);
    CHECK_THROWS_AS(npoint_reduced_exact(m, {}), std::invalid_argument);

    // λ = 0 with a product state factorises.
    const ModelSpec free = m.with_lambda(0.0);
    const ExactEvolver ex(free);
    const Matrix two = ex.npoint({{a, 0.4}, {b, 1.3}});
    CHECK((two - ex.one_point(a, 0.4) * ex.one_point(b, 1.3)).norm() < 1e-12);
}

TEST_CASE("image extraction") {
    presets::Rng rng(9);
    const Dims d{2, 3};
    Matrix x(6, 6);
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j) x(i, j) = rng.complex_normal();
    for (Index a = 0; a < 3; ++a)
        for (Index b = 0; b < 3; ++b) CHECK((image_extract_exact(x, d, a, b) - oracle::block(x, 2, 3, a, b)).norm() == 0.0);
    CHECK_THROWS_AS(image_extract_exact(x, d, 3, 0), IndexOutOfRange);
    CHECK(std::abs(expectation(presets::spin_z(), DensityMatrix::pure(2, 0)) - 0.5) < 1e-15);
}
