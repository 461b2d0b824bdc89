// Product-rule means over spheres and weighted balls, the wave mean field,
// and quadrature of the n-dimensional representation formulas.
#include "dskg/spherical.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "dskg/errors.hpp"

namespace dskg::spherical {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Support-intersection windows are widened by this much so the difference
// stencil of v_phi (h <= 2e-4 near the horizon) never straddles the cut.
constexpr double kClipMargin = 1e-3;

void check_dim(int n) {
    if (n != 2 && n != 3) {
        throw DomainError("only n in {2,3} is supported");
    }
}

void check_radius(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("mean radius must be finite and >= 0");
    }
}

void check_rule(const SphereRule& rule) {
    if (rule.polar < 4 || rule.azimuth < 4 || rule.circle < 4) {
        throw DomainError("quadrature rules need at least 4 nodes");
    }
}

struct NodeTable {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre nodes on [-1,1] by Newton iteration on the Legendre
// recurrence (standard construction); cached per node count.
const NodeTable& legendre_table(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<NodeTable>> cache;
    std::scoped_lock lock(mu);
    std::unique_ptr<NodeTable>& slot = cache[n];
    if (!slot) {
        auto table = std::make_unique<NodeTable>();
        table->x.resize(static_cast<std::size_t>(n));
        table->w.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double pk =
                        ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            table->x[static_cast<std::size_t>(i)] = -x;
            table->w[static_cast<std::size_t>(i)] = w;
            table->x[static_cast<std::size_t>(n - 1 - i)] = x;
            table->w[static_cast<std::size_t>(n - 1 - i)] = w;
        }
        slot = std::move(table);
    }
    return *slot;
}

// Mean over the unit sphere S^2 of g(y), y the unit direction.
template <typename G>
double unit_sphere_mean3(G&& g, const SphereRule& rule) {
    const NodeTable& gl = legendre_table(rule.polar);
    double total = 0.0;
    for (int i = 0; i < rule.polar; ++i) {
        const double mu = gl.x[static_cast<std::size_t>(i)];
        const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        double ring = 0.0;
        for (int j = 0; j < rule.azimuth; ++j) {
            const double psi = kTwoPi * j / rule.azimuth;
            ring += g(data::Vec{s * std::cos(psi), s * std::sin(psi), mu});
        }
        total += gl.w[static_cast<std::size_t>(i)] * ring / rule.azimuth;
    }
    return total / 2.0;
}

// Mean over the unit circle S^1 of g(y).
template <typename G>
double unit_circle_mean(G&& g, const SphereRule& rule) {
    double total = 0.0;
    for (int j = 0; j < rule.circle; ++j) {
        const double th = kTwoPi * j / rule.circle;
        total += g(data::Vec{std::cos(th), std::sin(th), 0.0});
    }
    return total / rule.circle;
}

// integral_{|y|<=1 in R^2} g(y)/sqrt(1-|y|^2) dV via rho = sin(psi), which
// turns the weighted element into sin(psi) dpsi dtheta (no singularity).
template <typename G>
double unit_ball_weighted2(G&& g, const SphereRule& rule) {
    const NodeTable& gl = legendre_table(rule.polar);
    double total = 0.0;
    for (int i = 0; i < rule.polar; ++i) {
        const double psi =
            0.25 * M_PI * (gl.x[static_cast<std::size_t>(i)] + 1.0);
        const double rho = std::sin(psi);
        double ring = 0.0;
        for (int j = 0; j < rule.azimuth; ++j) {
            const double th = kTwoPi * j / rule.azimuth;
            ring += g(data::Vec{rho * std::cos(th), rho * std::sin(th), 0.0});
        }
        total += gl.w[static_cast<std::size_t>(i)] * 0.25 * M_PI * rho *
                 (kTwoPi / rule.azimuth) * ring;
    }
    return total;
}

double dot3(const data::Vec& a, const data::Vec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

data::Vec offset(const data::Vec& x, double r, const data::Vec& y) {
    return {x[0] + r * y[0], x[1] + r * y[1], x[2] + r * y[2]};
}

double norm_dim(const data::Vec& x, int n) {
    const double planar = std::hypot(x[0], x[1]);
    return n == 3 ? std::hypot(planar, x[2]) : planar;
}

void check_eval_time(double t) {
    if (!(t >= 0.0)) {
        throw DomainError("solution evaluation requires t >= 0");
    }
}

}  // namespace

SphericalConstants constants_for(int n) {
    check_dim(n);
    // c_0 is the product of odd integers up to n-2 (odd n) or n-1 (even n);
    // both specializations give 1 for n in {2,3}.
    return n == 3 ? SphericalConstants{2.0 * kTwoPi, 1.0}
                  : SphericalConstants{kTwoPi, 1.0};
}

double sphere_mean(const data::SpatialND& phi, const data::Vec& x, double r,
                   int n, const SphereRule& rule) {
    if (!phi) throw DomainError("sphere_mean needs a callable");
    check_dim(n);
    check_radius(r);
    check_rule(rule);
    auto g = [&](const data::Vec& y) { return phi(offset(x, r, y)); };
    return n == 3 ? unit_sphere_mean3(g, rule) : unit_circle_mean(g, rule);
}

double ball_mean_weighted(const data::SpatialND& phi, const data::Vec& x,
                          double r, const SphereRule& rule) {
    if (!phi) throw DomainError("ball_mean_weighted needs a callable");
    check_radius(r);
    check_rule(rule);
    return unit_ball_weighted2(
        [&](const data::Vec& y) { return phi(offset(x, r, y)); }, rule);
}

double v_phi(const data::SpatialND& phi, const data::GradientND& grad,
             const data::Vec& x, double r, int n, const SphereRule& rule) {
    if (!phi) throw DomainError("v_phi needs a callable");
    check_dim(n);
    check_radius(r);
    check_rule(rule);
    if (r == 0.0) return phi(x);
    if (grad) {
        // d/dr of the mean goes under the integral: the mean of grad . y.
        auto dg = [&](const data::Vec& y) {
            return dot3(grad(offset(x, r, y)), y);
        };
        if (n == 3) {
            const double mean = unit_sphere_mean3(
                [&](const data::Vec& y) { return phi(offset(x, r, y)); },
                rule);
            return mean + r * unit_sphere_mean3(dg, rule);
        }
        const double mean =
            ball_mean_weighted(phi, x, r, rule) / kTwoPi;
        return mean + r * unit_ball_weighted2(dg, rule) / kTwoPi;
    }
    // g(rho) = rho * mean(|rho|) is odd and smooth; central differences with
    // one Richardson level give an O(h^4) derivative.
    auto g = [&](double rho) {
        const double a = std::abs(rho);
        const double mean = (n == 3)
                                ? sphere_mean(phi, x, a, 3, rule)
                                : ball_mean_weighted(phi, x, a, rule) / kTwoPi;
        return rho * mean;
    };
    const double h = 1e-4 * (1.0 + r);
    const double d1 = (g(r + h) - g(r - h)) / (2.0 * h);
    const double d2 = (g(r + 0.5 * h) - g(r - 0.5 * h)) / h;
    const double v = (4.0 * d2 - d1) / 3.0;
    if (std::abs(v - d2) > 1e-4 * (1.0 + std::abs(v))) {
        throw DerivativeFailure(
            "radial derivative stencil of the mean did not settle");
    }
    return v;
}

WaveMeanField wave_mean_field(const data::SpatialND& phi,
                              const data::GradientND& grad, int n,
                              const SphereRule& rule) {
    check_dim(n);
    return {[phi, grad, n, rule](const data::Vec& x, double r) {
        return v_phi(phi, grad, x, r, n, rule);
    }};
}

SolutionND solve_homogeneous_nd(const data::CauchyDataND& d,
                                kernels::CurvedMass mass,
                                const quadrature::QuadratureSpec& q,
                                const SphereRule& rule) {
    quadrature::validate(q);
    check_rule(rule);
    data::spot_check_support(d);
    SolutionND sol{mass, d, q, {}};
    sol.eval = [d, mass, q, rule](const data::Vec& x, double t) -> double {
        check_eval_time(t);
        if (t == 0.0) return d.phi0 ? d.phi0(x) : 0.0;
        const double zmax = 1.0 - std::exp(-t);
        const double ax = norm_dim(x, d.n);
        double u = 0.0;
        if (d.phi0) {
            const double lo = std::max(0.0, ax - d.phi0_radius - kClipMargin);
            const double hi =
                d.n == 3 ? std::min(zmax, ax + d.phi0_radius + kClipMargin)
                         : zmax;
            if (zmax >= lo && (d.n == 2 || zmax <= hi)) {
                u += std::exp(0.5 * t) *
                     v_phi(d.phi0, d.grad_phi0, x, zmax, d.n, rule);
            }
            if (hi > lo) {
                auto g0 = [&](double z) {
                    return v_phi(d.phi0, d.grad_phi0, x, z, d.n, rule) *
                           kernels::evaluate_K0(z, t, mass).value;
                };
                u += 2.0 * quadrature::integrate_endpoint_guarded(g0, lo, hi, q);
            }
        }
        if (d.phi1) {
            const double lo = std::max(0.0, ax - d.phi1_radius - kClipMargin);
            const double hi =
                d.n == 3 ? std::min(zmax, ax + d.phi1_radius + kClipMargin)
                         : zmax;
            if (hi > lo) {
                auto g1 = [&](double z) {
                    return v_phi(d.phi1, d.grad_phi1, x, z, d.n, rule) *
                           kernels::evaluate_K1(z, t, mass).value;
                };
                u += 2.0 * quadrature::integrate(g1, lo, hi, q);
            }
        }
        return u;
    };
    return sol;
}

SolutionND solve_source_nd(const data::CauchyDataND& d,
                           kernels::CurvedMass mass,
                           const quadrature::QuadratureSpec& q,
                           const SphereRule& rule) {
    quadrature::validate(q);
    check_rule(rule);
    data::spot_check_support(d);
    if (d.f && !d.f_radius) {
        throw DomainError("a source needs its support radius callable");
    }
    SolutionND sol{mass, d, q, {}};
    sol.eval = [d, mass, q, rule](const data::Vec& x, double t) -> double {
        check_eval_time(t);
        if (t == 0.0 || !d.f) return 0.0;
        quadrature::QuadratureSpec inner_spec = q;
        inner_spec.abs_tol *= 0.1;
        inner_spec.rel_tol *= 0.1;
        const double at = std::exp(-t);
        const double ax = norm_dim(x, d.n);
        auto slice = [&](double b) -> double {
            const double radius = d.f_radius(b);
            if (radius <= 0.0) return 0.0;
            const double rb = std::exp(-b) - at;
            const double lo = std::max(0.0, ax - radius - kClipMargin);
            const double hi =
                d.n == 3 ? std::min(rb, ax + radius + kClipMargin) : rb;
            if (hi <= lo) return 0.0;
            data::SpatialND phi_b = [f = d.f, b](const data::Vec& y) {
                return f(y, b);
            };
            auto integrand = [&](double r) {
                const double v = v_phi(phi_b, {}, x, r, d.n, rule);
                return v *
                       kernels::evaluate_E({r, t, 0.0, b}, mass).value;
            };
            return quadrature::integrate(integrand, lo, hi, inner_spec);
        };
        return 2.0 * quadrature::integrate(slice, 0.0, t, q);
    };
    return sol;
}

}  // namespace dskg::spherical
