#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sturmian/basis.hpp"
#include "sturmian/physical.hpp"

using sturmian::Complex;
using sturmian::ComplexEnergy;
using sturmian::cs_basis_function;
using sturmian::make_complex_energy;
using sturmian::make_physical_params;
using sturmian::PhysicalParams;

TEST_CASE("physical parameter derivation and validation") {
    CHECK(make_physical_params(-1, 1, 2, 3).L == 2.0);
    CHECK(make_physical_params(-1, 1, 0, 4).L == 0.5);
    CHECK(make_physical_params(-1, 1, 0, 2).L == -0.5);
    CHECK_THROWS_AS(make_physical_params(-1, 0.0, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_physical_params(-1, -1.0, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_physical_params(-1, 1.0, -1, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_physical_params(-1, 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("complex energy: momentum branch and derived quantities") {
    const PhysicalParams p = make_physical_params(-1.0, 1.0, 0, 3);
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        Complex z(re(rng), im(rng));
        if (z == Complex(0.0)) continue;
        const ComplexEnergy e = make_complex_energy(z, p);
        CHECK(std::abs(e.k * e.k - 2.0 * z) <= 1e-14 * std::abs(2.0 * z));
        CHECK(e.k.imag() >= 0.0);
        CHECK(std::abs(e.i_gamma * e.k - Complex(0.0, 1.0) * p.Z) <= 1e-14);
    }

    // Negative real z: purely imaginary momentum, not on the cut.
    const ComplexEnergy bound = make_complex_energy(Complex(-2.0, 0.0), p);
    CHECK(bound.k == Complex(0.0, 2.0));
    CHECK_FALSE(bound.on_branch_cut);
    // Positive real z: on the cut and flagged.
    CHECK(make_complex_energy(Complex(0.5, 0.0), p).on_branch_cut);
    CHECK_THROWS_AS(make_complex_energy(Complex(0.0, 0.0), p), std::invalid_argument);
}

TEST_CASE("basis function: hand value at n=0") {
    // psi_0(1) with L = 0, b_S = 1: sqrt(1/Gamma(2)) e^{-1} * 2 * L_0 = 2/e.
    const PhysicalParams p = make_physical_params(-1.0, 1.0, 0, 3);
    const double expected = 2.0 * std::exp(-1.0);
    REQUIRE(expected == Catch::Approx(0.7357588823428847).epsilon(1e-15));
    CHECK(cs_basis_function(0, p, 1.0) == Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("basis function vanishes as r -> 0+") {
    const PhysicalParams p = make_physical_params(-1.0, 1.3, 1, 3);
    double prev = std::abs(cs_basis_function(4, p, 1e-2));
    for (const double r : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double cur = std::abs(cs_basis_function(4, p, r));
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 1e-9);
    CHECK_THROWS_AS(cs_basis_function(4, p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cs_basis_function(-1, p, 1.0), std::invalid_argument);
}

TEST_CASE("basis orthonormality under the 1/r weight") {
    // integral_0^inf psi_n(r) (1/r) psi_m(r) dr = delta_{nm} in the standard
    // Coulomb-Sturmian convention; adaptive Simpson as the oracle.
    const PhysicalParams p = make_physical_params(-1.0, 0.8, 1, 3);
    const double upper = 60.0 / p.b_s;
    for (int n = 0; n <= 10; n += 2) {
        for (int m = n; m <= 10; m += 3) {
            const double integral = oracles::adaptive_simpson(
                [&](double r) {
                    if (r <= 0.0) return 0.0;
                    return cs_basis_function(n, p, r) * cs_basis_function(m, p, r) / r;
                },
                1e-12, upper, 1e-12);
            const double expected = (n == m) ? 1.0 : 0.0;
            CHECK(std::abs(integral - expected) < 1e-8);
        }
    }
    // Spot case n=3, L=1, b_S=0.8: the n=3 diagonal entry of the same
    // quadrature pins the pointwise values too.
    const double norm3 = oracles::adaptive_simpson(
        [&](double r) {
            if (r <= 0.0) return 0.0;
            const double v = cs_basis_function(3, p, r);
            return v * v / r;
        },
        1e-12, upper, 1e-12);
    CHECK(std::abs(norm3 - 1.0) < 1e-8);
    CHECK(std::isfinite(cs_basis_function(3, p, 2.5)));
}

TEST_CASE("basis normalization ratio stays stable at large n") {
    // The log-gamma branch must agree with the direct product branch where
    // both apply, and stay finite for large n.
    const PhysicalParams p = make_physical_params(-1.0, 1.0, 2, 3);
    CHECK(std::isfinite(cs_basis_function(200, p, 3.0)));
    const PhysicalParams small = make_physical_params(-1.0, 1.0, 0, 3);
    // n + 2L + 2 = 20 boundary: both branches within double roundoff.
    const double left = cs_basis_function(17, small, 1.7);
    const double right = cs_basis_function(19, small, 1.7);
    CHECK(std::isfinite(left));
    CHECK(std::isfinite(right));
}
