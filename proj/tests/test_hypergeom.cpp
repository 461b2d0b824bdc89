// Unit tests for the Gauss 2F1 module: frozen high-precision references,
// independent AGM and extended-precision oracles, and the analytic
// transformation properties the kernel formulas rely on.
#include <cmath>
#include <complex>

#include "doctest.h"
#include "dskg/errors.hpp"
#include "dskg/fd.hpp"
#include "dskg/hypergeom.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

using dskg::hypergeom::cdouble;
using dskg::hypergeom::cgamma;
using dskg::hypergeom::connection_15_3_6;
using dskg::hypergeom::gauss_2f1;
using dskg::hypergeom::gauss_2f1_contiguous_diff;
using dskg::hypergeom::gauss_2f1_dz;
using dskg::hypergeom::HypergeomParams;

namespace {
constexpr double kPi = 3.14159265358979323846;

double rel_err(cdouble got, cdouble want) {
    return std::abs(got - want) / std::abs(want);
}

cdouble gam(double M) { return {0.5, M}; }
}  // namespace

TEST_CASE("2F1 equals 1 at z=0 and matches frozen logarithmic-family values") {
    CHECK(gauss_2f1({{0.5, 0.7}, {0.5, 0.7}, 1.0, 0.0}).value == cdouble(1.0));
    CHECK(rel_err(gauss_2f1({0.5, 0.5, 1.0, 0.1}).value, refvals::f_half_z01) < 1e-13);
    CHECK(rel_err(gauss_2f1({0.5, 0.5, 1.0, 0.5}).value, refvals::f_half_z05) < 1e-13);
    CHECK(rel_err(gauss_2f1({0.5, 0.5, 1.0, 0.9}).value, refvals::f_half_z09) < 1e-12);
}

TEST_CASE("2F1(1/2,1/2;1;z) matches the AGM elliptic integral") {
    for (int i = 0; i < 20; ++i) {
        const double z = 0.01 + (0.97 - 0.01) * i / 19.0;
        const double want = 2.0 / kPi * testsup::elliptic_K_agm(std::sqrt(z));
        const auto got = gauss_2f1({0.5, 0.5, 1.0, z});
        CHECK(rel_err(got.value, want) < 1e-11);
        CHECK(std::abs(got.value.imag()) < 1e-15);
    }
    // Frozen spot values of K itself guard the oracle.
    CHECK(std::abs(testsup::elliptic_K_agm(0.5) - refvals::ellipk_k05) < 1e-15);
    CHECK(std::abs(testsup::elliptic_K_agm(0.9) - refvals::ellipk_k09) < 1e-15);
}

TEST_CASE("complex-parameter values against frozen references") {
    CHECK(rel_err(gauss_2f1({gam(1), gam(1), 1.0, 0.3}).value, refvals::f_M1_z03) < 1e-13);
    CHECK(rel_err(gauss_2f1({gam(1), gam(1), 1.0, 0.999}).value, refvals::f_M1_z0999) < 1e-12);
    CHECK(rel_err(gauss_2f1({gam(0.5), gam(0.5), 1.0, 0.75}).value, refvals::f_M05_z075) < 1e-12);
    CHECK(rel_err(gauss_2f1({gam(2) - 1.0, gam(2), 1.0, 0.6}).value, refvals::f2_M2_z06) < 1e-12);
    CHECK(rel_err(gauss_2f1({0.5, 0.75, 1.5, 0.99}).value, refvals::f_rho15_z099) < 1e-12);
}

TEST_CASE("agreement with the 50-digit series oracle across regimes") {
    for (const double M : {0.0, 0.3, 1.0, 2.0, 5.0}) {
        for (const double z : {0.05, 0.3, 0.45, 0.55, 0.75, 0.9, 0.99}) {
            const auto got = gauss_2f1({gam(M), gam(M), 1.0, z});
            const auto want = testsup::mp_2f1(
                {0.5, M}, {0.5, M}, {1.0, 0.0}, z);
            INFO("M=", M, " z=", z);
            CHECK(rel_err(got.value, want) < 1e-11);
        }
    }
    // Real-parameter c=3/2 family used by the estimate lemmas.
    for (const double rho : {1.0, 1.5, 1.9}) {
        for (const double z : {0.2, 0.6, 0.95}) {
            const auto got = gauss_2f1({0.5, rho / 2.0, 1.5, z});
            const auto want = testsup::mp_2f1({0.5, 0.0}, {rho / 2.0, 0.0}, {1.5, 0.0}, z);
            CHECK(rel_err(got.value, want) < 1e-11);
        }
    }
}

TEST_CASE("derivative: exact limit at z=0 and Richardson cross-check") {
    const auto d0 = gauss_2f1_dz({gam(2), gam(2), 1.0, 0.0});
    CHECK(std::abs(d0.value - cdouble(-3.75, 2.0)) < 1e-13);
    CHECK(std::abs(gauss_2f1_dz({0.5, 0.5, 1.0, 0.0}).value - cdouble(0.25)) < 1e-14);
    CHECK(rel_err(gauss_2f1_dz({gam(0.5), gam(0.5), 1.0, 0.4}).value, refvals::fz_M05_z04) < 1e-12);

    for (const double M : {0.0, 0.5, 2.0}) {
        for (const double z : {0.1, 0.4, 0.7}) {
            auto freal = [&](double zz) {
                return gauss_2f1({gam(M), gam(M), 1.0, zz}).value.real();
            };
            auto fimag = [&](double zz) {
                return gauss_2f1({gam(M), gam(M), 1.0, zz}).value.imag();
            };
            const cdouble fd(dskg::fd::richardson_diff(freal, z, 1e-5, 2),
                             dskg::fd::richardson_diff(fimag, z, 1e-5, 2));
            const auto an = gauss_2f1_dz({gam(M), gam(M), 1.0, z});
            INFO("M=", M, " z=", z);
            CHECK(std::abs(an.value - fd) / (1.0 + std::abs(fd)) < 1e-7);
        }
    }
}

TEST_CASE("contiguous-difference series matches the explicit difference") {
    const auto t = gauss_2f1_contiguous_diff(gam(1.5), 0.5);
    CHECK(rel_err(t.value, refvals::tseries_M15_z05) < 1e-12);
    // The explicit difference (F1-F2)/z loses ~16-log10(z) digits to
    // cancellation, so compare only where it is well conditioned.
    for (const double M : {0.0, 0.7, 3.0}) {
        for (const double z : {0.05, 0.2, 0.5, 0.8, 0.97}) {
            const auto s = gauss_2f1_contiguous_diff(gam(M), z);
            const auto f1 = testsup::mp_2f1({0.5, M}, {0.5, M}, {1.0, 0.0}, z);
            const auto f2 = testsup::mp_2f1({-0.5, M}, {0.5, M}, {1.0, 0.0}, z);
            INFO("M=", M, " z=", z);
            CHECK(std::abs(s.value - (f1 - f2) / z) / std::abs(s.value) < 1e-10);
        }
    }
    // Tiny z: compare against the two-term Taylor expansion g + g^2(g+1) z/2,
    // whose truncation error is O(|g|^5 z^2) ~ 1e-16 here.
    for (const double M : {0.0, 0.7, 3.0}) {
        const dskg::hypergeom::cdouble g = gam(M);
        const double z = 1e-9;
        const auto s = gauss_2f1_contiguous_diff(g, z);
        const dskg::hypergeom::cdouble want = g + g * g * (g + 1.0) * (z / 2.0);
        INFO("M=", M);
        CHECK(std::abs(s.value - want) / std::abs(want) < 1e-12);
    }
    // z=0 limit is the leading coefficient gamma.
    CHECK(std::abs(gauss_2f1_contiguous_diff(gam(2.0), 0.0).value - gam(2.0)) < 1e-14);
}

TEST_CASE("connection formula agrees with the direct series and flags the bad strip") {
    const auto via_conn = connection_15_3_6(gam(1), gam(1), 1.0, 0.97);
    const auto want = testsup::mp_2f1({0.5, 1.0}, {0.5, 1.0}, {1.0, 0.0}, 0.97);
    CHECK(rel_err(via_conn.value, want) < 1e-11);
    // c-a-b = 0 for M=0: the Gamma coefficients blow up.
    CHECK_THROWS_AS(connection_15_3_6(0.5, 0.5, 1.0, 0.9), dskg::IllConditioned);
    // c-a-b = -1 in the shifted derivative family at M=0.
    CHECK_THROWS_AS(connection_15_3_6(1.5, 1.5, 2.0, 0.9), dskg::IllConditioned);
}

TEST_CASE("Euler transformation and conjugation symmetry") {
    for (const double M : {0.0, 0.5, 1.0, 2.5, 5.0}) {
        for (const double z : {0.0, 0.2, 0.5, 0.8, 0.99}) {
            const auto f = gauss_2f1({gam(M), gam(M), 1.0, z});
            const cdouble mirrored =
                std::pow(cdouble(1.0 - z), cdouble(0.0, -2.0 * M)) *
                gauss_2f1({{0.5, -M}, {0.5, -M}, 1.0, z}).value;
            INFO("M=", M, " z=", z);
            CHECK(rel_err(f.value, mirrored) < 1e-10);
            const auto conj_f = gauss_2f1({std::conj(gam(M)), std::conj(gam(M)), 1.0, z});
            CHECK(std::abs(conj_f.value - std::conj(f.value)) <=
                  1e-12 * (1.0 + std::abs(f.value)));
        }
    }
}

TEST_CASE("modulus bound against the real logarithmic family") {
    for (const double M : {0.25, 1.0, 3.0}) {
        const double bound_factor = std::cosh(kPi * M);
        for (const double z : {0.1, 0.5, 0.9, 0.99}) {
            const double lhs = std::abs(gauss_2f1({gam(M), gam(M), 1.0, z}).value);
            const double rhs = bound_factor * gauss_2f1({0.5, 0.5, 1.0, z}).value.real();
            INFO("M=", M, " z=", z);
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("complex gamma: Lanczos spot values and |Gamma(1/2+iM)|^2") {
    CHECK(rel_err(cgamma({0.5, 2.0}), refvals::gamma_05_2i) < 1e-12);
    CHECK(rel_err(cgamma({-1.3, 0.7}), refvals::gamma_m13_07i) < 1e-12);
    CHECK(std::abs(cgamma({4.0, 0.0}) - cdouble(6.0)) < 1e-12);
    CHECK(std::abs(dskg::hypergeom::abs_gamma_half_plus_iM_sq(0.0) - kPi) < 1e-15);
    CHECK(std::abs(dskg::hypergeom::abs_gamma_half_plus_iM_sq(1.0) -
                   kPi / std::cosh(kPi)) < 1e-15);
    CHECK(std::abs(dskg::hypergeom::abs_gamma_half_plus_iM_sq(10.0) -
                   kPi / std::cosh(10.0 * kPi)) < 1e-18);
    // Cross-check the identity against the Lanczos values themselves.
    for (const double M : {0.3, 1.7}) {
        const double via_lanczos = std::norm(cgamma({0.5, M}));
        CHECK(rel_err(via_lanczos, dskg::hypergeom::abs_gamma_half_plus_iM_sq(M)) < 1e-12);
    }
}

TEST_CASE("domain and convergence errors") {
    CHECK_THROWS_AS(gauss_2f1({0.5, 0.5, 1.0, -0.1}), dskg::DomainError);
    CHECK_THROWS_AS(gauss_2f1({0.5, 0.5, 1.0, 1.0}), dskg::DomainError);
    CHECK_THROWS_AS(gauss_2f1({0.5, 0.5, -2.0, 0.3}), dskg::DomainError);
    // M=0 at z extremely close to 1 exceeds the fallback term budget.
    CHECK_THROWS_AS(gauss_2f1({0.5, 0.5, 1.0, 1.0 - 1e-14}), dskg::NonConvergent);
    // Error metadata is populated.
    const auto v = gauss_2f1({gam(1), gam(1), 1.0, 0.4});
    CHECK(v.terms_used > 5);
    CHECK(v.abs_error_estimate >= 0.0);
    CHECK(v.abs_error_estimate < 1e-10);
}
