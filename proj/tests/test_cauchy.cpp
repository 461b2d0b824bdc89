// 1D Cauchy solvers: dependence domain, exact zero/initial cases, finite
// propagation, locally-constant-data closed forms, linearity, source
// causality, and PDE residual convergence.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dskg/cauchy.hpp"
#include "dskg/data.hpp"
#include "dskg/errors.hpp"

using dskg::cauchy::dependence_domain;
using dskg::cauchy::solve_homogeneous_1d;
using dskg::cauchy::solve_source_1d;
using dskg::data::CauchyData1D;
using dskg::kernels::CurvedMass;
using dskg::quadrature::QuadratureSpec;

namespace {

// C^2 plateau: 1 on |x| <= 4, smooth descent to 0 at |x| = 6.
double plateau(double x) {
    const double a = std::abs(x);
    if (a <= 4.0) return 1.0;
    if (a >= 6.0) return 0.0;
    const double q = (a - 4.0) / 2.0;
    return 1.0 - q * q * q * (10.0 + q * (-15.0 + 6.0 * q));
}

// C^infinity bump supported on |x| < 1.
double bump(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

CauchyData1D plateau_phi0() {
    CauchyData1D d;
    d.phi0 = plateau;
    d.phi0_radius = 6.0;
    return d;
}

}  // namespace

TEST_CASE("dependence domain endpoints") {
    const auto degenerate = dependence_domain(0.3, 0.0);
    CHECK(degenerate.lo == 0.3);
    CHECK(degenerate.hi == 0.3);
    const auto half = dependence_domain(1.0, std::log(2.0));
    CHECK(half.lo == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half.hi == doctest::Approx(1.5).epsilon(1e-14));
    const auto horizon = dependence_domain(0.0, 50.0);
    CHECK(horizon.hi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(dependence_domain(0.0, -0.1), dskg::DomainError);
}

TEST_CASE("zero data gives the zero solution; t=0 returns phi0 exactly") {
    const QuadratureSpec q;
    CauchyData1D zero;
    const auto uh = solve_homogeneous_1d(zero, CurvedMass(1.0), q);
    const auto us = solve_source_1d(zero, CurvedMass(1.0), q);
    for (const double x : {-1.0, 0.0, 2.5}) {
        for (const double t : {0.0, 0.7, 2.0}) {
            CHECK(uh(x, t) == 0.0);
            CHECK(us(x, t) == 0.0);
        }
    }

    CauchyData1D d;
    d.phi0 = bump;
    d.phi0_radius = 1.0;
    const auto u = solve_homogeneous_1d(d, CurvedMass(0.5), q);
    for (const double x : {-0.9, -0.2, 0.0, 0.55}) {
        CHECK(u(x, 0.0) == bump(x));
    }
    CHECK_THROWS_AS(u(0.0, -1.0), dskg::DomainError);
}

TEST_CASE("locally constant phi0 reproduces cos(Mt)") {
    const QuadratureSpec q;
    const CauchyData1D d = plateau_phi0();
    for (const double M : {0.0, 0.5, 1.0, 2.0}) {
        const auto u = solve_homogeneous_1d(d, CurvedMass(M), q);
        for (const double t : {0.25, 1.0, 2.0}) {
            // Dependence domain of (0.3, t) stays inside the flat region, so
            // u solves u_tt + M^2 u = 0 with u=1, u_t=0 there.
            const double got = u(0.3, t);
            const double want = std::cos(M * t);
            INFO("M=", M, " t=", t);
            CHECK(std::abs(got - want) < 1e-7);
        }
    }
}

TEST_CASE("locally constant phi1 reproduces sin(Mt)/M") {
    const QuadratureSpec q;
    CauchyData1D d;
    d.phi1 = plateau;
    d.phi1_radius = 6.0;
    for (const double M : {0.0, 0.5, 2.0}) {
        const auto u = solve_homogeneous_1d(d, CurvedMass(M), q);
        for (const double t : {0.25, 1.0, 2.0}) {
            const double got = u(-0.4, t);
            const double want = (M == 0.0) ? t : std::sin(M * t) / M;
            INFO("M=", M, " t=", t);
            CHECK(std::abs(got - want) < 1e-7);
        }
    }
}

TEST_CASE("locally constant unit source reproduces (1-cos(Mt))/M^2") {
    const QuadratureSpec q;
    CauchyData1D d;
    dskg::data::SeparableSource1D src;
    src.space = plateau;
    src.space_radius = 6.0;
    src.time = [](double) { return 1.0; };
    src.time_lo = 0.0;
    src.time_hi = 10.0;
    dskg::data::set_source(d, src);
    for (const double M : {0.0, 0.5, 2.0}) {
        const auto u = solve_source_1d(d, CurvedMass(M), q);
        for (const double t : {0.5, 1.0, 2.0}) {
            const double got = u(0.2, t);
            const double want =
                (M == 0.0) ? 0.5 * t * t : (1.0 - std::cos(M * t)) / (M * M);
            INFO("M=", M, " t=", t);
            CHECK(std::abs(got - want) < 1e-7);
        }
    }
}

TEST_CASE("finite propagation: identically zero outside the horizon") {
    const QuadratureSpec q;
    CauchyData1D d;
    d.phi0 = bump;
    d.phi0_radius = 1.0;
    d.phi1 = bump;
    d.phi1_radius = 1.0;
    const auto u = solve_homogeneous_1d(d, CurvedMass(1.0), q);
    for (const double t : {0.5, 1.5, 4.0}) {
        const double edge = 1.0 + (1.0 - std::exp(-t));
        for (const double off : {1e-3, 0.1, 2.0}) {
            CHECK(std::abs(u(edge + off, t)) <= 1e-14);
            CHECK(std::abs(u(-edge - off, t)) <= 1e-14);
        }
    }
}

TEST_CASE("initial conditions recovered: value exact, velocity to O(h^2)") {
    const QuadratureSpec q;
    CauchyData1D d;
    d.phi0 = bump;
    d.phi0_radius = 1.0;
    d.phi1 = [](double x) { return bump(x) * (1.0 + 0.3 * x); };
    d.phi1_radius = 1.0;
    const auto u = solve_homogeneous_1d(d, CurvedMass(1.5), q);
    const double h = 1e-3;
    for (const double x : {-0.5, 0.0, 0.4, 0.8}) {
        CHECK(u(x, 0.0) == bump(x));
        // One-sided O(h^2) stencil for u_t(x,0).
        const double ut =
            (-3.0 * u(x, 0.0) + 4.0 * u(x, h) - u(x, 2.0 * h)) / (2.0 * h);
        CHECK(std::abs(ut - d.phi1(x)) < 1e-5);
    }
}

TEST_CASE("solution is linear in the data") {
    const QuadratureSpec q;
    CauchyData1D d;
    d.phi0 = bump;
    d.phi0_radius = 1.0;
    CauchyData1D d3;
    d3.phi0 = [](double x) { return 3.0 * bump(x); };
    d3.phi0_radius = 1.0;
    const auto u1 = solve_homogeneous_1d(d, CurvedMass(0.5), q);
    const auto u3 = solve_homogeneous_1d(d3, CurvedMass(0.5), q);
    for (const double x : {0.0, 0.6, 1.2}) {
        const double a = u1(x, 1.1);
        const double b = u3(x, 1.1);
        CHECK(std::abs(b - 3.0 * a) <= 1e-10 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("source causality: no response before or away from the source") {
    const QuadratureSpec q;
    CauchyData1D d;
    dskg::data::SeparableSource1D src;
    src.space = bump;
    src.space_radius = 1.0;
    src.time = [](double b) { return bump(4.0 * (b - 0.5)); };  // b in (0.25,0.75)
    src.time_lo = 0.25;
    src.time_hi = 0.75;
    dskg::data::set_source(d, src);
    const auto u = solve_source_1d(d, CurvedMass(0.5), q);
    // Before the source switches on, and spatially out of reach, u = 0.
    CHECK(u(0.0, 0.2) == 0.0);
    CHECK(std::abs(u(2.5, 2.0)) <= 1e-14);
    // Inside the lit region the response is genuinely nonzero.
    CHECK(std::abs(u(0.0, 1.0)) > 1e-4);
}

TEST_CASE("M -> 0 continuity of the solution map") {
    const QuadratureSpec q;
    CauchyData1D d;
    d.phi0 = bump;
    d.phi0_radius = 1.0;
    const auto u0 = solve_homogeneous_1d(d, CurvedMass(0.0), q);
    const auto ueps = solve_homogeneous_1d(d, CurvedMass(1e-4), q);
    for (const double x : {0.0, 0.5, 1.3}) {
        CHECK(std::abs(u0(x, 1.0) - ueps(x, 1.0)) <= 1e-3);
    }
}

TEST_CASE("interior PDE residual vanishes at second order in the stencil") {
    const QuadratureSpec q;
    CauchyData1D d;
    d.phi0 = bump;
    d.phi0_radius = 1.0;
    const CurvedMass mass(1.0);
    const auto u = solve_homogeneous_1d(d, mass, q);
    const double x = 0.2, t = 0.8;
    auto residual = [&](double h) {
        const double utt =
            (u(x, t + h) - 2.0 * u(x, t) + u(x, t - h)) / (h * h);
        const double uxx =
            (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
        return utt - std::exp(-2.0 * t) * uxx + mass.M * mass.M * u(x, t);
    };
    const double r1 = residual(2e-2);
    const double r2 = residual(1e-2);
    // O(h^2) residual: halving h divides the defect by about 4.
    CHECK(std::abs(r1 / r2) > 3.0);
    CHECK(std::abs(r1 / r2) < 5.0);
    CHECK(std::abs(r2) < 1e-2);
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
    const QuadratureSpec q;
    CauchyData1D d;
    d.phi0 = bump;
    d.phi0_radius = 1.0;
    const auto u = solve_homogeneous_1d(d, CurvedMass(1.0), q);
    const std::vector<double> xs{-0.5, 0.0, 0.7};
    const std::vector<double> ts{0.3, 1.0};
    const auto grid = dskg::cauchy::evaluate_grid(u, xs, ts, 2);
    REQUIRE(grid.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        REQUIRE(grid[i].size() == xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            CHECK(grid[i][j] == u(xs[j], ts[i]));
        }
    }
}

TEST_CASE("support spot-check rejects lying data") {
    const QuadratureSpec q;
    CauchyData1D liar;
    liar.phi0 = [](double) { return 1.0; };  // claims radius 1, never vanishes
    liar.phi0_radius = 1.0;
    CHECK_THROWS_AS(solve_homogeneous_1d(liar, CurvedMass(1.0), q),
                    dskg::DomainError);
}
