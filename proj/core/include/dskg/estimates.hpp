// L^q norms of computed solutions on uniform grids, decay-envelope
// measurements for the homogeneous and source Cauchy problems in one and
// higher dimensions, and bounded-ratio sweeps of the kernel-profile integral
// bounds behind those envelopes. All constants in the underlying estimates
// are existential, so every check fits a constant from the data and tests
// that it stays bounded; nothing here asserts a specific constant value.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dskg/data.hpp"
#include "dskg/kernels.hpp"
#include "dskg/quadrature.hpp"

namespace dskg::estimates {

// Configuration of a decay sweep.
//   p, q        conjugate Lebesgue exponents, 1/p + 1/q = 1, with p in (1,2];
//   s           smoothing index; only s = 0 is measured;
//   rho         auxiliary exponent in [1,2). The envelopes tie it to (p,q)
//               through the norm-duality relation 1/q = 1/p - (1 - 1/rho),
//               i.e. rho = p/(2(p-1)); rho = 1 iff p = q = 2.
//   times       strictly increasing positive sample times;
//   grid_points norm-grid resolution, at least 2^12 points per dimension;
//   grid_margin padding added beyond data support + horizon radius 1;
//   eval_stride solver-evaluation stride: the solution is evaluated at every
//               eval_stride-th norm-grid node and densified onto the full
//               grid with a cubic B-spline (exact when stride is 1); must
//               divide grid_points - 1.
struct EstimateConfig {
    double p = 2.0;
    double q = 2.0;
    double s = 0.0;
    double rho = 1.0;
    std::vector<double> times = {0.5, 1.0, 1.5, 2.0, 2.5,
                                 3.0, 3.5, 4.0, 4.5, 5.0};
    std::size_t grid_points = 4096;
    double grid_margin = 0.5;
    int eval_stride = 1;
    int threads = 0;
};

void validate(const EstimateConfig& cfg);

// One decay sample: the measured norm against the C = 1 envelope.
struct DecayRecord {
    double t = 0.0;
    double lhs_norm = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;  // lhs_norm / envelope; 0 when both sides vanish
};

// The fitted constant for a sweep: the largest measured ratio.
double fitted_constant(const std::vector<DecayRecord>& records);

// (int |u|^q dx)^(1/q) by the composite trapezoid rule. xs must be uniform
// ascending with at least two nodes and values[i] = u(xs[i]). q must be a
// finite real >= 1; q = infinity raises UnsupportedNorm.
double lq_norm(const std::vector<double>& xs, const std::vector<double>& values,
               double q);

// Radial counterpart (omega_{n-1} int |u(r)|^q r^(n-1) dr)^(1/q), n in {2,3},
// for norms of radially symmetric functions on R^n.
double lq_norm_radial(const std::vector<double>& rs,
                      const std::vector<double>& values, double q, int n);

// C = 1 envelopes as functions of t; the *_p/*_q arguments are the data
// norms in L^p / L^q.
//
// Homogeneous 1D:
//   rho  = 1:  (1+t) [ e^{t/2} phi0_q + (e^t - 1) e^{-t} phi1_q ]
//   rho  > 1:  e^{t/2} phi0_q
//              + (1+t)(e^t - 1)^{1/rho} e^{t(1/2 - 1/rho)} phi0_p
//              + (1+t)(e^t - 1)^{1/rho} e^{-t/rho} phi1_p
double envelope_homogeneous_1d(double t, const EstimateConfig& cfg,
                               double phi0_p, double phi0_q, double phi1_p,
                               double phi1_q);

// Source 1D:
//   e^{t(1 - 1/rho)} int_0^t (1+t-b)(e^{t-b}-1)^{1/rho}(e^{t-b}+1)^{-1}
//                            f_norm_p(b) db
double envelope_source_1d(double t, const EstimateConfig& cfg,
                          const std::function<double(double)>& f_norm_p);

// Homogeneous nD with moment exponent a = 2s - n(1/p - 1/q):
//   (1+t)(1 - e^{-t})^a [ e^{t/2} phi0_p + (1 - e^{-t}) phi1_p ]
double envelope_homogeneous_nd(double t, int n, const EstimateConfig& cfg,
                               double phi0_p, double phi1_p);

// Source nD with the same exponent a:
//   int_0^t f_norm_p(b) e^{-b} (e^{-b} - e^{-t})^{1+a} (1+t-b) db
double envelope_source_nd(double t, int n, const EstimateConfig& cfg,
                          const std::function<double(double)>& f_norm_p);

// Measures ||u(.,t)||_q for the 1D problem of d — homogeneous data or a
// source term, not both — against the matching envelope at each cfg time.
// s must be 0 (the one-dimensional envelopes carry no smoothing index).
std::vector<DecayRecord> check_decay_1d(const data::CauchyData1D& d,
                                        kernels::CurvedMass mass,
                                        const EstimateConfig& cfg);

// Radially symmetric nD data: profiles are functions of |x|. Optional
// derivative profiles sharpen the r = 0 evaluation and enable the
// differentiated-mean path in n = 2.
struct RadialDataND {
    int n = 3;
    std::function<double(double)> phi0;
    std::function<double(double)> dphi0;
    double phi0_radius = 0.0;
    std::function<double(double)> phi1;
    std::function<double(double)> dphi1;
    double phi1_radius = 0.0;
    std::function<double(double, double)> f;  // f(r, b)
    std::function<double(double)> f_radius;   // support radius per time b
};

// nD decay sweep on radially symmetric data (the radial weight r^(n-1) in
// the norm requires the symmetry). Requires s = 0 and p = q = 2: the moment
// exponent constraints (n+1)/2 (1/p - 1/q) <= 2s <= n (1/p - 1/q) < 2s + 1
// leave only the conjugate pair (2,2) at s = 0. For n = 3 the spherical
// means of radial data reduce exactly to
//   v(rho, z) = [ (rho+z) phi(rho+z) + (rho-z) phi(|rho-z|) ] / (2 rho),
// which the sweep integrates against the K0/K1 kernels directly; n = 2 goes
// through the full weighted-disk means.
std::vector<DecayRecord> check_decay_nd(const RadialDataND& d,
                                        kernels::CurvedMass mass,
                                        const EstimateConfig& cfg);

// One bounded-ratio sweep of a kernel-profile integral bound: lhs, the
// C = 1 right-hand side, and their ratio at each z; the fitted constant is
// the ratio at the smallest z and must not be exceeded by more than 5%
// anywhere else in the sweep.
struct BoundSweep {
    std::string name;
    std::vector<double> zs;
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::vector<double> ratio;
    double c_hat = 0.0;
    double max_exceedance = 0.0;  // max over the sweep of ratio/c_hat - 1
    bool within_tolerance = true;  // max_exceedance <= 0.05
};

struct LemmaReport {
    double rho = 1.0;
    double exponent = 0.0;  // moment exponent a in (-1, 0]
    double mass = 1.0;      // curved mass entering the K0-based bounds
    std::vector<BoundSweep> sweeps;
};

// Integrates the left-hand sides of the four kernel-profile bounds over a z
// grid in (1, 100] and fits their constants. With t = ln z, F the real
// hypergeometric factor F(1/2,1/2;1;.) and zeta = ((z-1)^2-y^2)/((z+1)^2-y^2):
//   k1-profile-rho-mean:
//     int_0^{z-1} ((z+1)^2-y^2)^{-rho/2} F(zeta)^rho dy
//       <= C (1+ln z)^rho (z-1)(z+1)^{-rho}
//   k1-profile-moment (a = exponent):
//     int_0^{z-1} y^a ((z+1)^2-y^2)^{-1/2} F(zeta) dy
//       <= C z^{-1} (z-1)^{1+a} (1+ln z)
//   k0-rho-norm:
//     ( int_0^{1-1/z} |K0(r, t)|^rho dr )^{1/rho}
//       <= C (1+t)(e^t-1)^{1/rho} e^{t(1/2-1/rho)}
//   k0-moment:
//     int_0^{z-1} y^a e^{-t} |K0(y e^{-t}, t)| dy
//       <= C z^{-1/2} (z-1)^{1+a} (1+ln z)
LemmaReport lemma_bound_checks(double rho, const std::vector<double>& zs,
                               double exponent = 0.0, double mass = 1.0);

}  // namespace dskg::estimates
