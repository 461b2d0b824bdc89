// Independent reference solvers: per-Fourier-mode ODE integration on a
// periodic domain, a leapfrog finite-difference scheme, and the radial n=3
// reduction through w = r*u. These never touch the closed-form kernel code
// they are used to cross-check.
#pragma once

#include <vector>

#include "dskg/data.hpp"
#include "dskg/kernels.hpp"

namespace dskg::oracle {

// Uniform-grid solution samples u[ti][xi] at nodes xs and times ts.
struct GridSolution {
    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<std::vector<double>> u;
    // Discrete energy integral(u_t^2 + speed^2 u_x^2 + M^2 u^2) dx per time
    // row; filled by the spectral solver for source-free runs, else empty.
    std::vector<double> energy;

    // Value at (x, t): t must match a stored row; x is interpolated with a
    // local degree-6 barycentric polynomial (exact at nodes).
    double value_at(double x, double t) const;
};

struct SpectralConfig {
    double half_length = 8.0;  // domain [-L, L), period 2L
    int modes = 2048;          // power of two
    double rtol = 1e-10;
    double atol = 1e-12;
    bool flat_speed = false;  // replace e^(-2t) by 1 (flat-space comparison)
    int threads = 0;          // 0 = hardware concurrency
};

struct FDConfig {
    double half_length = 8.0;
    double dx = 1.0 / 256.0;
    double dt = 0.0;  // 0 derives dt = cfl * dx
    double cfl = 0.9;
};

// Per-mode integration of u_hat'' + (e^(-2t) xi^2 + M^2) u_hat = f_hat with
// an adaptive embedded RK pair; inverse FFT at each requested time. Sources
// must be provided in separable form. Data with a declared positive support
// radius must fit inside the domain with the propagation horizon to spare;
// radius zero asserts the callables are themselves 2L-periodic-compatible.
GridSolution spectral_solve_1d(const data::CauchyData1D& d,
                               kernels::CurvedMass mass,
                               const SpectralConfig& cfg,
                               const std::vector<double>& ts);

// Second-order leapfrog on the same periodic grid; output rows are linearly
// interpolated in time between steps.
GridSolution fd_solve_1d(const data::CauchyData1D& d, kernels::CurvedMass mass,
                         const FDConfig& cfg, const std::vector<double>& ts);

// Radial n=3 data as profiles of r >= 0; the optional source is separable
// with a radial space factor.
struct RadialData3D {
    std::function<double(double)> phi0;
    std::function<double(double)> phi1;
    double radius = 0.0;
    std::optional<data::SeparableSource1D> f;
};

// Solves the radial 3D problem via the odd extension w(x,t) = x u(|x|,t),
// which turns the radial Laplacian into the 1D second derivative; returns
// u(r,t) on the non-negative nodes with the r=0 limit from an odd-symmetric
// stencil.
GridSolution radial_reduce_3d(const RadialData3D& d, kernels::CurvedMass mass,
                              const SpectralConfig& cfg,
                              const std::vector<double>& ts);

}  // namespace dskg::oracle
