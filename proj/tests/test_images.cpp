// test_images.cpp — image families and the exact image ODE

#include <catch_amalgamated.hpp>

#include "heisen/images.hpp"
#include "heisen/oracle.hpp"
#include "heisen/presets.hpp"
#include "oracles.hpp"

using namespace heisen;

TEST_CASE("image family round trip and composition") {
    presets::Rng rng(12);
    const Dims d{2, 3};
    Matrix x(6, 6), y(6, 6);
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j) {
            x(i, j) = rng.complex_normal();
            y(i, j) = rng.complex_normal();
        }
    const ImageFamily fx = to_image_family(x, d), fy = to_image_family(y, d);
    CHECK((from_image_family(fx) - x).norm() < 1e-15);
    CHECK((from_image_family(compose_images(fx, fy)) - x * y).norm() < 1e-12);
    CHECK((from_image_family(fx.adjoint()) - x.adjoint()).norm() < 1e-15);
    CHECK(std::abs(fx.norm() - x.norm()) < 1e-12);
    CHECK_THROWS_AS(fx(0, 3), IndexOutOfRange);
    CHECK_THROWS_AS(compose_images(fx, ImageFamily(Dims{2, 2})), DimensionError);

    const Matrix rho = presets::random_density(rng, 3);
    CHECK((contract_with_bath(fx, DensityMatrix(rho)) - oracle::reduce(x, rho)).norm() < 1e-12);
}

TEST_CASE("exact image ODE reproduces the full-space evolution") {
    const ModelSpec m = presets::random_model(42, 2, 3, 0.4);
    presets::Rng rng(13);
    const Matrix o = presets::random_hermitian(rng, 2);
    const TimeGrid grid = TimeGrid::uniform(2.0, 8);
    const auto fams = evolve_images_exact(m, o, grid);
    REQUIRE(fams.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Matrix exact = oracle::heisenberg(m, o, grid[k]);
        CHECK((from_image_family(fams[k]) - exact).norm() < 1e-9);
        CHECK(fams[k].time() == grid[k]);
        CHECK((contract_with_bath(fams[k], m.rho_b()) - oracle::reduce(exact, m.rho_b().matrix())).norm() < 1e-9);
    }
    // λ = 0: diagonal images carry the free evolution, off-diagonal images vanish.
    const ModelSpec free = m.with_lambda(0.0);
    const auto ff = evolve_images_exact(free, o, grid);
    const Matrix u0 = unitary_propagator(free.h0(), grid.back(), 1.0);
    for (Index a = 0; a < 3; ++a)
        for (Index b = 0; b < 3; ++b) {
            const Matrix expect = a == b ? Matrix(u0.adjoint() * o * u0) : Matrix::Zero(2, 2);
            CHECK((ff.back()(a, b) - expect).norm() < 1e-9);
        }
}

TEST_CASE("time grids") {
    CHECK_THROWS_AS(TimeGrid({0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.0, 1.0, 1.0}), std::invalid_argument);
    const TimeGrid g = TimeGrid::covering({0.7, 0.2, 0.7});
    REQUIRE(g.size() == 3);
    CHECK(g.index_of(0.7) == 2);
    CHECK_THROWS_AS(g.index_of(0.5), IndexOutOfRange);
}
