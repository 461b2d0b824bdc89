// Quadrature evaluation of the 1D representation formulas.
#include "dskg/cauchy.hpp"

#include <algorithm>
#include <cmath>

#include "dskg/errors.hpp"
#include "dskg/parallel.hpp"

namespace dskg::cauchy {
namespace {

double call_or_zero(const data::Spatial1D& fn, double x) {
    return fn ? fn(x) : 0.0;
}

void check_time(double t) {
    if (!(t >= 0.0)) {
        throw DomainError("solution evaluation requires t >= 0");
    }
}

}  // namespace

Interval dependence_domain(double x, double t) {
    check_time(t);
    const double h = -std::expm1(-t);  // 1 - e^(-t), accurate for small t
    return {x - h, x + h};
}

Solution1D solve_homogeneous_1d(const data::CauchyData1D& d,
                                kernels::CurvedMass mass,
                                const quadrature::QuadratureSpec& q) {
    quadrature::validate(q);
    data::spot_check_support(d);
    auto eval = [d, mass, q](double x, double t) -> double {
        check_time(t);
        if (t == 0.0) {
            return call_or_zero(d.phi0, x);
        }
        // 1 - e^(-t) written exactly as the kernel-domain edge sees it, so
        // quadrature nodes can touch the closed endpoint.
        const double zmax = 1.0 - std::exp(-t);
        double u = 0.5 * std::exp(0.5 * t) *
                   (call_or_zero(d.phi0, x + zmax) + call_or_zero(d.phi0, x - zmax));
        if (d.phi0) {
            auto g0 = [&](double z) {
                return (d.phi0(x - z) + d.phi0(x + z)) *
                       kernels::evaluate_K0(z, t, mass).value;
            };
            u += quadrature::integrate_endpoint_guarded(g0, 0.0, zmax, q);
        }
        if (d.phi1) {
            auto g1 = [&](double z) {
                return (d.phi1(x - z) + d.phi1(x + z)) *
                       kernels::evaluate_K1(z, t, mass).value;
            };
            u += quadrature::integrate(g1, 0.0, zmax, q);
        }
        return u;
    };
    return Solution1D{mass, d, q, std::move(eval)};
}

Solution1D solve_source_1d(const data::CauchyData1D& d, kernels::CurvedMass mass,
                           const quadrature::QuadratureSpec& q) {
    quadrature::validate(q);
    data::spot_check_support(d);
    auto eval = [d, mass, q](double x, double t) -> double {
        check_time(t);
        if (t == 0.0 || !d.f) {
            return 0.0;
        }
        const double at = std::exp(-t);
        // Inner slices are resolved one digit past the outer target so their
        // noise stays below the outer error estimate.
        quadrature::QuadratureSpec inner_spec = q;
        inner_spec.abs_tol = 0.1 * q.abs_tol;
        inner_spec.rel_tol = 0.1 * q.rel_tol;
        auto slice = [&](double b) -> double {
            const double rb = std::exp(-b) - at;  // cone radius of the slice
            if (!(rb > 0.0)) {
                return 0.0;  // b at t up to rounding: empty slice
            }
            double lo = x - rb;
            double hi = x + rb;
            if (d.f_radius) {
                const double r = d.f_radius(b);
                if (!(r > 0.0)) {
                    return 0.0;
                }
                lo = std::max(lo, -r);
                hi = std::min(hi, r);
                if (!(lo < hi)) {
                    return 0.0;
                }
            }
            auto integrand = [&](double y) {
                return d.f(y, b) * kernels::evaluate_E({x, t, y, b}, mass).value;
            };
            return quadrature::integrate(integrand, lo, hi, inner_spec);
        };
        return quadrature::integrate(slice, 0.0, t, q);
    };
    return Solution1D{mass, d, q, std::move(eval)};
}

std::vector<std::vector<double>> evaluate_grid(const Solution1D& u,
                                               const std::vector<double>& xs,
                                               const std::vector<double>& ts,
                                               int threads) {
    std::vector<std::vector<double>> values(ts.size(),
                                            std::vector<double>(xs.size(), 0.0));
    const std::size_t nx = xs.size();
    parallel_for(ts.size() * nx, threads, [&](std::size_t k) {
        const std::size_t i = k / nx;
        const std::size_t j = k % nx;
        values[i][j] = u.eval(xs[j], ts[i]);
    });
    return values;
}

}  // namespace dskg::cauchy
