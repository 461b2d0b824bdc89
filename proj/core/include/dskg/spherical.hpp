// Spherical and weighted ball means, the wave-equation mean field v_phi
// built from them, and the n-dimensional (n = 2, 3) Cauchy solvers that
// couple v_phi to the K0/K1 kernels and the fundamental solution.
#pragma once

#include <functional>

#include "dskg/data.hpp"
#include "dskg/kernels.hpp"
#include "dskg/quadrature.hpp"

namespace dskg::spherical {

// Node counts of the fixed product quadrature rules; the defaults are
// spectrally accurate for smooth integrands.
struct SphereRule {
    int polar = 32;    // Gauss-Legendre nodes in cos(theta) / the polar angle
    int azimuth = 64;  // trapezoid nodes around the azimuth (n = 3 and ball)
    int circle = 128;  // trapezoid nodes on the circle (n = 2)
};

// Area of the unit sphere S^(n-1) and the odd/even double-factorial constant
// of the mean-chain normalization.
struct SphericalConstants {
    double omega_nm1 = 0.0;
    double c0n = 1.0;
};
SphericalConstants constants_for(int n);

// Average of phi over the sphere |y - x| = r (n = 3: S^2 product rule,
// n = 2: circle trapezoid). phi === c gives c exactly.
double sphere_mean(const data::SpatialND& phi, const data::Vec& x, double r,
                   int n, const SphereRule& rule = {});

// Weighted ball integral over the unit disk (n = 2 only):
// integral_{|y|<=1} phi(x + r y) / sqrt(1 - |y|^2) dV_y, evaluated in polar
// coordinates with rho = sin(psi) so the weight is removed analytically.
// phi === 1 gives 2*pi.
double ball_mean_weighted(const data::SpatialND& phi, const data::Vec& x,
                          double r, const SphereRule& rule = {});

// Value at radius r of the solution of the flat wave equation
// v_tt - Laplace v = 0, v(.,0) = phi, v_t(.,0) = 0:
//   n = 3:  v = d/dr [ r * sphere_mean(phi, x, r) ]
//   n = 2:  v = d/dr [ r/(2*pi) * ball_mean_weighted(phi, x, r) ]
// (the prefactors are the unique ones with v(x,0) = phi(x)). When grad is
// supplied the r-derivative is taken under the integral sign (exact in r);
// otherwise a central difference with two-level Richardson extrapolation is
// used. Throws DerivativeFailure if the stencil disagrees with itself.
double v_phi(const data::SpatialND& phi, const data::GradientND& grad,
             const data::Vec& x, double r, int n, const SphereRule& rule = {});

// The same v as a reusable field v(x, r).
struct WaveMeanField {
    std::function<double(const data::Vec&, double)> v;
};
WaveMeanField wave_mean_field(const data::SpatialND& phi,
                              const data::GradientND& grad, int n,
                              const SphereRule& rule = {});

// Pointwise nD solution evaluator; safe to call concurrently at distinct
// (x, t).
struct SolutionND {
    kernels::CurvedMass mass{0.0};
    data::CauchyDataND data;
    quadrature::QuadratureSpec quad;
    std::function<double(const data::Vec&, double)> eval;

    double operator()(const data::Vec& x, double t) const { return eval(x, t); }
};

// u(x,t) = e^(t/2) v_phi0(x, 1-e^(-t))
//        + 2 int_0^(1-e^(-t)) v_phi0(x, z) K0(z,t) dz
//        + 2 int_0^(1-e^(-t)) v_phi1(x, z) K1(z,t) dz,  n in {2, 3}.
SolutionND solve_homogeneous_nd(const data::CauchyDataND& d,
                                kernels::CurvedMass mass,
                                const quadrature::QuadratureSpec& q,
                                const SphereRule& rule = {});

// u(x,t) = 2 int_0^t db int_0^(e^(-b)-e^(-t)) v_{f(.,b)}(x, r) E(r,t;0,b) dr
// with vanishing initial data, n in {2, 3}.
SolutionND solve_source_nd(const data::CauchyDataND& d,
                           kernels::CurvedMass mass,
                           const quadrature::QuadratureSpec& q,
                           const SphereRule& rule = {});

}  // namespace dskg::spherical
