// Lp/Lq norm machinery, the closed-form decay envelopes, measured decay
// sweeps for the 1D and radial nD problems (boundedness, linearity,
// log-slope, grid stability), and the integral-bound z-sweeps.
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "dskg/data.hpp"
#include "dskg/errors.hpp"
#include "dskg/estimates.hpp"
#include "dskg/hypergeom.hpp"
#include "dskg/kernels.hpp"
#include "dskg/quadrature.hpp"
#include "dskg/spherical.hpp"

using dskg::data::CauchyData1D;
using dskg::data::SeparableSource1D;
using dskg::estimates::BoundSweep;
using dskg::estimates::check_decay_1d;
using dskg::estimates::check_decay_nd;
using dskg::estimates::DecayRecord;
using dskg::estimates::envelope_homogeneous_1d;
using dskg::estimates::envelope_homogeneous_nd;
using dskg::estimates::envelope_source_1d;
using dskg::estimates::envelope_source_nd;
using dskg::estimates::EstimateConfig;
using dskg::estimates::fitted_constant;
using dskg::estimates::lemma_bound_checks;
using dskg::estimates::LemmaReport;
using dskg::estimates::lq_norm;
using dskg::estimates::lq_norm_radial;
using dskg::estimates::RadialDataND;
using dskg::kernels::CurvedMass;

namespace {

double bump(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0));
}

double dbump(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double d = x * x - 1.0;
    return bump(x) * (-2.0 * x / (d * d));
}

std::vector<double> grid(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) /
                         static_cast<double>(n - 1);
    }
    return xs;
}

std::vector<double> sample(const std::vector<double>& xs,
                           const std::function<double(double)>& f) {
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f(xs[i]);
    return v;
}

// Composite Simpson on [a, b] with n (even) intervals; test-local oracle.
double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

const BoundSweep& sweep_named(const LemmaReport& rep, const char* name) {
    for (const auto& s : rep.sweeps) {
        if (s.name == name) return s;
    }
    REQUIRE(false);
    return rep.sweeps.front();
}

EstimateConfig quick_cfg(std::vector<double> times, int stride) {
    EstimateConfig cfg;
    cfg.grid_points = 4097;
    cfg.eval_stride = stride;
    cfg.times = std::move(times);
    return cfg;
}

}  // namespace

TEST_CASE("lq_norm: plateau, Gaussian, homogeneity, rejects") {
    SUBCASE("near-indicator plateau of width 1 has norm ~ 1^(1/q)") {
        // 1 on |x| <= 0.49, C^1 descent to 0 at |x| = 0.5.
        auto plateau = [](double x) {
            const double s = (std::abs(x) - 0.49) / 0.01;
            if (s <= 0.0) return 1.0;
            if (s >= 1.0) return 0.0;
            return 1.0 - s * s * (3.0 - 2.0 * s);
        };
        const auto xs = grid(-1.0, 1.0, 4097);
        const auto vals = sample(xs, plateau);
        for (double q : {1.0, 2.0, 3.0}) {
            CHECK(lq_norm(xs, vals, q) ==
                  doctest::Approx(1.0).epsilon(0.02));
        }
    }
    SUBCASE("zero samples give zero norm") {
        const auto xs = grid(-1.0, 1.0, 4097);
        CHECK(lq_norm(xs, std::vector<double>(xs.size(), 0.0), 2.0) == 0.0);
    }
    SUBCASE("truncated Gaussian against the closed-form L2 norm") {
        const auto xs = grid(-8.0, 8.0, 8193);
        const auto vals = sample(xs, [](double x) { return std::exp(-x * x); });
        const double exact = std::pow(std::asin(1.0), 0.25);  // (pi/2)^(1/4)
        CHECK(lq_norm(xs, vals, 2.0) ==
              doctest::Approx(exact).epsilon(1e-8));
    }
    SUBCASE("homogeneity under non-binary scaling") {
        const auto xs = grid(-2.0, 2.0, 4097);
        const auto vals = sample(xs, bump);
        const auto scaled =
            sample(xs, [](double x) { return -3.0 * bump(x); });
        for (double q : {1.0, 1.7, 2.0, 4.0}) {
            CHECK(lq_norm(xs, scaled, q) ==
                  doctest::Approx(3.0 * lq_norm(xs, vals, q))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("rejections") {
        const auto xs = grid(0.0, 1.0, 16);
        const std::vector<double> vals(16, 1.0);
        CHECK_THROWS_AS(
            lq_norm(xs, vals, std::numeric_limits<double>::infinity()),
            dskg::UnsupportedNorm);
        CHECK_THROWS_AS(lq_norm(xs, vals, 0.5), dskg::DomainError);
        CHECK_THROWS_AS(lq_norm(xs, std::vector<double>(8, 1.0), 2.0),
                        dskg::DomainError);
    }
    SUBCASE("radial norms of the unit constant") {
        const auto rs = grid(0.0, 1.0, 4097);
        const std::vector<double> ones(rs.size(), 1.0);
        // (omega_{n-1} * int_0^1 r^{n-1} dr)^(1/2)
        CHECK(lq_norm_radial(rs, ones, 2.0, 3) ==
              doctest::Approx(std::sqrt(4.0 * M_PI / 3.0)).epsilon(1e-6));
        CHECK(lq_norm_radial(rs, ones, 2.0, 2) ==
              doctest::Approx(std::sqrt(M_PI)).epsilon(1e-6));
        CHECK_THROWS_AS(lq_norm_radial(rs, ones, 2.0, 4), dskg::DomainError);
    }
}

TEST_CASE("estimate config validation") {
    EstimateConfig cfg;
    CHECK_NOTHROW(dskg::estimates::validate(cfg));

    EstimateConfig bad = cfg;
    bad.rho = 1.5;  // p = q = 2 forces rho = 1
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);

    bad = cfg;
    bad.p = 2.5;
    bad.q = 2.5 / 1.5;
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);

    EstimateConfig conj;  // p = 1.5, q = 3 pins rho = p/(2(p-1)) = 1.5
    conj.p = 1.5;
    conj.q = 3.0;
    conj.rho = 1.5;
    CHECK_NOTHROW(dskg::estimates::validate(conj));
    conj.rho = 1.0;
    CHECK_THROWS_AS(dskg::estimates::validate(conj), dskg::DomainError);

    bad = cfg;
    bad.q = 2.1;  // breaks conjugacy
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);

    bad = cfg;
    bad.times = {};
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);
    bad.times = {1.0, 0.5};
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);
    bad.times = {-1.0};
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);

    bad = cfg;
    bad.grid_points = 2048;
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);

    bad = cfg;
    bad.grid_points = 4097;
    bad.eval_stride = 7;  // 4096 % 7 != 0
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);
    bad.eval_stride = 0;
    CHECK_THROWS_AS(dskg::estimates::validate(bad), dskg::DomainError);
    bad.eval_stride = 16;
    CHECK_NOTHROW(dskg::estimates::validate(bad));
}

TEST_CASE("envelope closed forms at t = 0 and t = ln 2") {
    const double ln2 = std::log(2.0);
    EstimateConfig cfg;  // p = q = 2, rho = 1

    SUBCASE("1D homogeneous, rho = 1") {
        CHECK(envelope_homogeneous_1d(0.0, cfg, 0.7, 0.7, 0.3, 0.3) ==
              doctest::Approx(0.7).epsilon(1e-15));
        const double expect =
            (1.0 + ln2) * (std::sqrt(2.0) * 0.7 + 0.5 * 0.3);
        CHECK(envelope_homogeneous_1d(ln2, cfg, 0.7, 0.7, 0.3, 0.3) ==
              doctest::Approx(expect).epsilon(1e-14));
    }
    SUBCASE("1D homogeneous, rho = 1.5 (p = 1.5, q = 3)") {
        EstimateConfig c15;
        c15.p = 1.5;
        c15.q = 3.0;
        c15.rho = 1.5;
        const double n0p = 0.4, n0q = 0.7, n1p = 0.2;
        // e^{t/2} n0q + (1+t)(e^t-1)^{2/3} [ e^{t(1/2-2/3)} n0p
        //                                   + e^{-2t/3} n1p ] at t = ln 2
        const double expect = std::sqrt(2.0) * n0q +
                              (1.0 + ln2) * std::pow(2.0, -1.0 / 6.0) * n0p +
                              (1.0 + ln2) * std::pow(2.0, -2.0 / 3.0) * n1p;
        CHECK(envelope_homogeneous_1d(ln2, c15, n0p, n0q, n1p, 0.9) ==
              doctest::Approx(expect).epsilon(1e-14));
    }
    SUBCASE("1D source envelope against a test-local Simpson rule") {
        auto fn = [](double b) { return std::exp(-b); };
        auto integrand = [&](double b) {
            const double lag = 1.0 - b;
            return (1.0 + lag) * std::expm1(lag) / (std::exp(lag) + 1.0) *
                   fn(b);
        };
        const double expect = simpson(integrand, 0.0, 1.0, 4000);
        CHECK(envelope_source_1d(1.0, cfg, fn) ==
              doctest::Approx(expect).epsilon(1e-8));
        CHECK(envelope_source_1d(0.0, cfg, fn) == 0.0);
    }
    SUBCASE("nD homogeneous at p = q = 2, s = 0 (zero moment exponent)") {
        const double expect =
            (1.0 + ln2) * (std::sqrt(2.0) * 0.7 + 0.5 * 0.3);
        CHECK(envelope_homogeneous_nd(ln2, 3, cfg, 0.7, 0.3) ==
              doctest::Approx(expect).epsilon(1e-14));
        CHECK(envelope_homogeneous_nd(ln2, 2, cfg, 0.7, 0.3) ==
              doctest::Approx(expect).epsilon(1e-14));
    }
    SUBCASE("nD source envelope against Simpson") {
        auto fn = [](double b) { return 1.0 / (1.0 + b); };
        auto integrand = [&](double b) {
            const double reach = std::exp(-b) - std::exp(-1.0);
            return fn(b) * std::exp(-b) * reach * (2.0 - b);
        };
        const double expect = simpson(integrand, 0.0, 1.0, 4000);
        CHECK(envelope_source_nd(1.0, 3, cfg, fn) ==
              doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("1D decay sweeps") {
    SUBCASE("phi0 bump, M = 1: bounded ratio, regression anchors") {
        CauchyData1D d;
        d.phi0 = bump;
        d.phi0_radius = 1.0;
        const auto recs = check_decay_1d(d, CurvedMass(1.0),
                                         quick_cfg({0.5, 2.0, 5.0}, 8));
        REQUIRE(recs.size() == 3);
        for (const auto& r : recs) {
            CHECK(std::isfinite(r.lhs_norm));
            CHECK(r.lhs_norm > 0.0);
            CHECK(r.envelope > 0.0);
            CHECK(r.ratio > 0.0);
        }
        // Bounded-ratio acceptance: max over sweep vs first sample.
        const double chat = fitted_constant(recs);
        CHECK(chat / recs.front().ratio <= 5.0);
        CHECK(chat / recs.front().ratio >= 0.2);
        // Deterministic regression anchors (measured once, pinned).
        CHECK(recs[0].lhs_norm == doctest::Approx(0.26306339).epsilon(1e-5));
        CHECK(recs[1].lhs_norm == doctest::Approx(0.39153405).epsilon(1e-5));
        CHECK(recs[2].lhs_norm == doctest::Approx(0.37547581).epsilon(1e-5));
    }
    SUBCASE("amplitude doubling: lhs doubles, ratio invariant") {
        CauchyData1D d1, d2;
        d1.phi0 = bump;
        d1.phi0_radius = 1.0;
        d2.phi0 = [](double x) { return 2.0 * bump(x); };
        d2.phi0_radius = 1.0;
        const auto cfg = quick_cfg({0.5, 2.0}, 8);
        const auto r1 = check_decay_1d(d1, CurvedMass(1.0), cfg);
        const auto r2 = check_decay_1d(d2, CurvedMass(1.0), cfg);
        for (std::size_t i = 0; i < r1.size(); ++i) {
            CHECK(std::abs(r2[i].lhs_norm / r1[i].lhs_norm - 2.0) < 1e-12);
            CHECK(std::abs(r2[i].ratio / r1[i].ratio - 1.0) < 1e-10);
        }
    }
    SUBCASE("phi1-only, M = 0: log-slope of lhs matches the envelope") {
        CauchyData1D d;
        d.phi1 = bump;
        d.phi1_radius = 1.0;
        const auto recs = check_decay_1d(d, CurvedMass(0.0),
                                         quick_cfg({3.0, 5.0}, 8));
        const double slope_lhs =
            (std::log(recs[1].lhs_norm) - std::log(recs[0].lhs_norm)) / 2.0;
        const double slope_env =
            (std::log(recs[1].envelope) - std::log(recs[0].envelope)) / 2.0;
        CHECK(std::abs(slope_lhs - slope_env) < 0.1);
    }
    SUBCASE("separable source: ratio anchor and amplitude invariance") {
        auto make = [](double amp) {
            CauchyData1D d;
            SeparableSource1D src;
            src.space = [amp](double x) { return amp * bump(x / 0.4); };
            src.space_radius = 0.4;
            src.time = [](double b) { return std::exp(-b); };
            src.time_lo = 0.1;
            src.time_hi = 0.9;
            dskg::data::set_source(d, src);
            return d;
        };
        const auto cfg = quick_cfg({0.5}, 16);
        const auto r1 = check_decay_1d(make(1.0), CurvedMass(1.0), cfg);
        REQUIRE(r1.size() == 1);
        CHECK(r1[0].ratio == doctest::Approx(1.40507).epsilon(1e-3));
        const auto r2 = check_decay_1d(make(2.0), CurvedMass(1.0), cfg);
        CHECK(std::abs(r2[0].lhs_norm / r1[0].lhs_norm - 2.0) < 1e-12);
        CHECK(std::abs(r2[0].ratio / r1[0].ratio - 1.0) < 1e-10);
    }
    SUBCASE("general (non-separable) source agrees with the separable path") {
        CauchyData1D sep;
        SeparableSource1D src;
        src.space = [](double x) { return bump(x / 0.4); };
        src.space_radius = 0.4;
        src.time = [](double b) { return std::exp(-b); };
        src.time_lo = 0.1;
        src.time_hi = 0.9;
        dskg::data::set_source(sep, src);

        CauchyData1D gen;
        gen.f = [](double x, double b) {
            if (b < 0.1 || b > 0.9) return 0.0;
            return bump(x / 0.4) * std::exp(-b);
        };
        gen.f_radius = [](double b) {
            return (b >= 0.1 && b <= 0.9) ? 0.4 : 0.0;
        };

        const auto cfg = quick_cfg({0.5}, 16);
        const auto rs = check_decay_1d(sep, CurvedMass(1.0), cfg);
        const auto rg = check_decay_1d(gen, CurvedMass(1.0), cfg);
        CHECK(rg[0].lhs_norm ==
              doctest::Approx(rs[0].lhs_norm).epsilon(1e-9));
        CHECK(rg[0].ratio == doctest::Approx(rs[0].ratio).epsilon(1e-6));
    }
    SUBCASE("zero data: all-zero records, no error") {
        CauchyData1D d;
        const auto recs =
            check_decay_1d(d, CurvedMass(1.0), quick_cfg({0.5, 1.0}, 16));
        REQUIRE(recs.size() == 2);
        for (const auto& r : recs) {
            CHECK(r.lhs_norm == 0.0);
            CHECK(r.envelope == 0.0);
            CHECK(r.ratio == 0.0);
        }
    }
    SUBCASE("rejections: mixed problem, smoothing index") {
        CauchyData1D d;
        d.phi0 = bump;
        d.phi0_radius = 1.0;
        d.f = [](double, double) { return 1.0; };
        d.f_radius = [](double) { return 0.5; };
        CHECK_THROWS_AS(
            check_decay_1d(d, CurvedMass(1.0), quick_cfg({0.5}, 16)),
            dskg::DomainError);

        CauchyData1D h;
        h.phi0 = bump;
        h.phi0_radius = 1.0;
        auto cfg = quick_cfg({0.5}, 16);
        cfg.s = 0.5;
        CHECK_THROWS_AS(check_decay_1d(h, CurvedMass(1.0), cfg),
                        dskg::DomainError);
    }
}

TEST_CASE("fitted constant") {
    std::vector<DecayRecord> recs(3);
    recs[0].ratio = 0.5;
    recs[1].ratio = 2.0;
    recs[2].ratio = 1.0;
    CHECK(fitted_constant(recs) == 2.0);
    CHECK(fitted_constant({}) == 0.0);
}

TEST_CASE("nD decay sweeps") {
    RadialDataND shell;
    shell.n = 3;
    shell.phi1 = [](double r) { return bump((r - 0.5) / 0.1); };
    shell.dphi1 = [](double r) { return dbump((r - 0.5) / 0.1) / 0.1; };
    shell.phi1_radius = 0.6;

    SUBCASE("n = 3 shell phi1: full sweep bounded and decaying") {
        EstimateConfig cfg = quick_cfg(
            {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0}, 8);
        const auto recs = check_decay_nd(shell, CurvedMass(1.0), cfg);
        REQUIRE(recs.size() == 10);
        for (const auto& r : recs) {
            CHECK(std::isfinite(r.lhs_norm));
            CHECK(r.lhs_norm > 0.0);
            CHECK(r.ratio > 0.0);
        }
        const double chat = fitted_constant(recs);
        CHECK(chat / recs.front().ratio <= 5.0);
        // No upward divergence at the tail of the sweep.
        const std::size_t n = recs.size();
        CHECK_FALSE((recs[n - 3].ratio < recs[n - 2].ratio &&
                     recs[n - 2].ratio < recs[n - 1].ratio));
        // Regression anchor from the pinned measurement.
        CHECK(recs[0].lhs_norm == doctest::Approx(0.0411867).epsilon(1e-4));
    }
    SUBCASE("n = 3 closed-form radial path matches the full nD solver") {
        // Independent evaluation: lift the radial profile to 3D data and run
        // the spherical-means solver at the strided nodes, then compare the
        // resulting norm against the sweep's record.
        EstimateConfig cfg = quick_cfg({1.0}, 256);
        const auto recs = check_decay_nd(shell, CurvedMass(1.0), cfg);

        dskg::data::CauchyDataND nd;
        nd.n = 3;
        nd.phi1 = [&](const dskg::data::Vec& y) {
            const double r =
                std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            return shell.phi1(r);
        };
        nd.phi1_radius = 0.6;
        nd.grad_phi1 = [&](const dskg::data::Vec& y) {
            const double r =
                std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            if (r < 1e-14) return dskg::data::Vec{0.0, 0.0, 0.0};
            const double s = shell.dphi1(r) / r;
            return dskg::data::Vec{s * y[0], s * y[1], s * y[2]};
        };
        dskg::quadrature::QuadratureSpec meas;
        meas.abs_tol = 1e-12;
        meas.rel_tol = 1e-5;
        const auto sol =
            dskg::spherical::solve_homogeneous_nd(nd, CurvedMass(1.0), meas);

        const double radius = 0.6;
        const double reach = radius - std::expm1(-1.0) + 1e-9;
        const double hi = radius + 1.0 + cfg.grid_margin;
        const auto rs = grid(0.0, hi, cfg.grid_points);
        std::vector<double> vals(rs.size(), 0.0);
        for (std::size_t i = 0; i < rs.size(); i += 256) {
            if (rs[i] <= reach) vals[i] = sol({rs[i], 0.0, 0.0}, 1.0);
        }
        // Compare at the coarse nodes through the coarse-trapezoid norm.
        std::vector<double> coarse_r, coarse_v;
        for (std::size_t i = 0; i < rs.size(); i += 256) {
            coarse_r.push_back(rs[i]);
            coarse_v.push_back(vals[i]);
        }
        const double norm_ref = lq_norm_radial(coarse_r, coarse_v, 2.0, 3);

        std::vector<double> sweep_coarse;
        {
            EstimateConfig c2 = cfg;
            const auto recs2 = check_decay_nd(shell, CurvedMass(1.0), c2);
            CHECK(recs2[0].lhs_norm ==
                  doctest::Approx(recs[0].lhs_norm).epsilon(1e-12));
        }
        // The strided sweep norm uses the dense spline grid; the coarse
        // trapezoid differs only by interpolation error.
        CHECK(recs[0].lhs_norm == doctest::Approx(norm_ref).epsilon(2e-2));
    }
    SUBCASE("n = 3 source: envelope ratio stable under grid refinement") {
        RadialDataND src;
        src.n = 3;
        src.f = [](double r, double b) {
            if (b < 0.0 || b > 1.0) return 0.0;
            return bump(r / 0.4) * (1.0 - b) * (1.0 - b);
        };
        src.f_radius = [](double b) {
            return (b >= 0.0 && b <= 1.0) ? 0.4 : 0.0;
        };
        EstimateConfig coarse = quick_cfg({1.0}, 16);
        EstimateConfig fine = quick_cfg({1.0}, 32);
        fine.grid_points = 8193;
        const auto rc = check_decay_nd(src, CurvedMass(1.0), coarse);
        const auto rf = check_decay_nd(src, CurvedMass(1.0), fine);
        CHECK(rc[0].lhs_norm > 0.0);
        CHECK(std::abs(rf[0].lhs_norm / rc[0].lhs_norm - 1.0) < 1e-3);
        CHECK(std::abs(rf[0].ratio / rc[0].ratio - 1.0) < 1e-3);
    }
    SUBCASE("n = 2 radial data through the planar solver") {
        RadialDataND disk;
        disk.n = 2;
        disk.phi0 = [](double r) { return bump(r / 0.5); };
        disk.dphi0 = [](double r) { return dbump(r / 0.5) / 0.5; };
        disk.phi0_radius = 0.5;
        EstimateConfig cfg = quick_cfg({0.25}, 64);
        const auto recs = check_decay_nd(disk, CurvedMass(0.5), cfg);
        REQUIRE(recs.size() == 1);
        CHECK(std::isfinite(recs[0].lhs_norm));
        CHECK(recs[0].lhs_norm > 0.0);
        CHECK(recs[0].ratio > 0.0);
        CHECK(recs[0].ratio < 5.0);
    }
    SUBCASE("zero data: all-zero records") {
        RadialDataND none;
        none.n = 3;
        const auto recs =
            check_decay_nd(none, CurvedMass(1.0), quick_cfg({0.5}, 16));
        CHECK(recs[0].lhs_norm == 0.0);
        CHECK(recs[0].ratio == 0.0);
    }
    SUBCASE("rejections") {
        auto cfg = quick_cfg({0.5}, 16);

        RadialDataND bad = shell;
        bad.n = 4;
        CHECK_THROWS_AS(check_decay_nd(bad, CurvedMass(1.0), cfg),
                        dskg::DomainError);

        // Non-(2,2) exponents violate the moment-exponent constraints at
        // s = 0.
        EstimateConfig c15 = cfg;
        c15.p = 1.5;
        c15.q = 3.0;
        c15.rho = 1.5;
        CHECK_THROWS_AS(check_decay_nd(shell, CurvedMass(1.0), c15),
                        dskg::DomainError);

        EstimateConfig cs = cfg;
        cs.s = 0.25;
        CHECK_THROWS_AS(check_decay_nd(shell, CurvedMass(1.0), cs),
                        dskg::DomainError);

        RadialDataND mixed = shell;
        mixed.f = [](double, double) { return 1.0; };
        mixed.f_radius = [](double) { return 0.1; };
        CHECK_THROWS_AS(check_decay_nd(mixed, CurvedMass(1.0), cfg),
                        dskg::DomainError);
    }
}

TEST_CASE("integral bound sweeps") {
    const std::vector<double> zs = {2.0, 5.0, 10.0, 25.0, 50.0, 75.0, 100.0};

    SUBCASE("all four bounds hold with the constant fitted at z = 2") {
        for (double rho : {1.0, 1.5}) {
            const auto rep = lemma_bound_checks(rho, zs);
            REQUIRE(rep.sweeps.size() == 4);
            for (const auto& s : rep.sweeps) {
                CAPTURE(rho);
                CAPTURE(s.name);
                CHECK(s.within_tolerance);
                CHECK(s.max_exceedance <= 0.05);
                CHECK(s.c_hat > 0.0);
                for (double r : s.ratio) CHECK(std::isfinite(r));
            }
        }
    }
    SUBCASE("both sides vanish as z -> 1+ with bounded ratio") {
        const auto rep = lemma_bound_checks(1.0, {1.001, 1.01, 1.1});
        const auto& prof = sweep_named(rep, "k1-profile-rho-mean");
        CHECK(prof.lhs[0] < 1e-3);
        CHECK(prof.rhs[0] < 1e-3);
        CHECK(prof.ratio[0] == doctest::Approx(1.0).epsilon(0.05));
        CHECK(prof.within_tolerance);
        const auto& mom = sweep_named(rep, "k1-profile-moment");
        CHECK(mom.ratio[0] == doctest::Approx(0.5).epsilon(0.05));
    }
    SUBCASE("moment exponent -1/2 and masses 0, 2 stay within tolerance") {
        for (double m : {0.0, 2.0}) {
            const auto rep = lemma_bound_checks(1.0, zs, -0.5, m);
            for (const auto& s : rep.sweeps) {
                CAPTURE(m);
                CAPTURE(s.name);
                CHECK(s.within_tolerance);
            }
        }
    }
    SUBCASE("rho = 1, zero exponent: the two kernel sweeps coincide") {
        // Substituting y = r z maps the weighted-moment integral onto the
        // rho-norm integral exactly, bounds included.
        const auto rep = lemma_bound_checks(1.0, zs);
        const auto& c = sweep_named(rep, "k0-rho-norm");
        const auto& d = sweep_named(rep, "k0-moment");
        for (std::size_t i = 0; i < zs.size(); ++i) {
            CHECK(d.lhs[i] == doctest::Approx(c.lhs[i]).epsilon(1e-9));
            CHECK(d.rhs[i] == doctest::Approx(c.rhs[i]).epsilon(1e-12));
        }
    }
    SUBCASE("profile sweeps do not depend on the mass") {
        const auto r0 = lemma_bound_checks(1.0, {2.0, 10.0}, 0.0, 0.0);
        const auto r2 = lemma_bound_checks(1.0, {2.0, 10.0}, 0.0, 2.0);
        for (const char* name :
             {"k1-profile-rho-mean", "k1-profile-moment"}) {
            const auto& a = sweep_named(r0, name);
            const auto& b = sweep_named(r2, name);
            for (std::size_t i = 0; i < a.lhs.size(); ++i) {
                CHECK(a.lhs[i] == b.lhs[i]);
            }
        }
    }
    SUBCASE("profile integral cross-check against test-local Simpson") {
        const double z = 2.0;
        auto integrand = [&](double y) {
            const double w = (z + 1.0) * (z + 1.0) - y * y;
            const double zeta =
                std::max(((z - 1.0) * (z - 1.0) - y * y) / w, 0.0);
            return dskg::hypergeom::gauss_2f1({0.5, 0.5, 1.0, zeta})
                       .value.real() /
                   std::sqrt(w);
        };
        const double oracle = simpson(integrand, 0.0, 1.0, 8000);
        const auto rep = lemma_bound_checks(1.0, {2.0});
        const auto& prof = sweep_named(rep, "k1-profile-rho-mean");
        CHECK(prof.lhs[0] == doctest::Approx(oracle).epsilon(1e-8));
        // Hand value of the companion bound's right side at z = 2, a = 0.
        const auto& mom = sweep_named(rep, "k1-profile-moment");
        CHECK(mom.rhs[0] ==
              doctest::Approx((1.0 + std::log(2.0)) / 2.0).epsilon(1e-15));
    }
    SUBCASE("determinism: identical inputs give identical reports") {
        const auto a = lemma_bound_checks(1.5, {2.0, 10.0, 100.0}, -0.25, 1.0);
        const auto b = lemma_bound_checks(1.5, {2.0, 10.0, 100.0}, -0.25, 1.0);
        for (std::size_t s = 0; s < a.sweeps.size(); ++s) {
            for (std::size_t i = 0; i < a.sweeps[s].lhs.size(); ++i) {
                CHECK(a.sweeps[s].lhs[i] == b.sweeps[s].lhs[i]);
                CHECK(a.sweeps[s].ratio[i] == b.sweeps[s].ratio[i]);
            }
        }
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(lemma_bound_checks(2.0, zs), dskg::DomainError);
        CHECK_THROWS_AS(lemma_bound_checks(0.5, zs), dskg::DomainError);
        CHECK_THROWS_AS(lemma_bound_checks(1.0, {}), dskg::DomainError);
        CHECK_THROWS_AS(lemma_bound_checks(1.0, {0.5, 2.0}),
                        dskg::DomainError);
        CHECK_THROWS_AS(lemma_bound_checks(1.0, {2.0, 2.0}),
                        dskg::DomainError);
        CHECK_THROWS_AS(lemma_bound_checks(1.0, {2.0, 101.0}),
                        dskg::DomainError);
        CHECK_THROWS_AS(lemma_bound_checks(1.0, zs, -1.0), dskg::DomainError);
        CHECK_THROWS_AS(lemma_bound_checks(1.0, zs, 0.5), dskg::DomainError);
    }
}
