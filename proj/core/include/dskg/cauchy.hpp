// 1D Cauchy-problem solvers by quadrature of the closed-form representation:
// homogeneous data through the K0/K1 kernels, source term through the
// fundamental solution over the backward cone.
#pragma once

#include <functional>
#include <vector>

#include "dskg/data.hpp"
#include "dskg/kernels.hpp"
#include "dskg/quadrature.hpp"

namespace dskg::cauchy {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Base of the backward dependence cone of (x,t) at time zero:
// [x-(1-e^(-t)), x+(1-e^(-t))]; the horizon radius saturates at 1.
Interval dependence_domain(double x, double t);

// Deterministic pointwise evaluator with its defining ingredients. Safe to
// call concurrently at distinct (x,t).
struct Solution1D {
    kernels::CurvedMass mass{0.0};
    data::CauchyData1D data;
    quadrature::QuadratureSpec quad;
    std::function<double(double, double)> eval;

    double operator()(double x, double t) const { return eval(x, t); }
};

// u(x,t) = (1/2)e^(t/2)[phi0(x+1-e^(-t)) + phi0(x-1+e^(-t))]
//        + int_0^(1-e^(-t)) [phi0(x-z)+phi0(x+z)] K0(z,t) dz
//        + int_0^(1-e^(-t)) [phi1(x-z)+phi1(x+z)] K1(z,t) dz
Solution1D solve_homogeneous_1d(const data::CauchyData1D& d,
                                kernels::CurvedMass mass,
                                const quadrature::QuadratureSpec& q);

// u(x,t) = int_0^t db int_{|y-x| <= e^(-b)-e^(-t)} f(y,b) E(x-y,t;0,b) dy
// with vanishing initial data.
Solution1D solve_source_1d(const data::CauchyData1D& d, kernels::CurvedMass mass,
                           const quadrature::QuadratureSpec& q);

// values[i][j] = u(xs[j], ts[i]), evaluated in parallel over grid points.
std::vector<std::vector<double>> evaluate_grid(const Solution1D& u,
                                               const std::vector<double>& xs,
                                               const std::vector<double>& ts,
                                               int threads = 0);

}  // namespace dskg::cauchy
