// Cauchy data containers: callables with declared compact support, shared by
// the solvers, the oracles, and the CLI presets. Null callables mean
// identically zero.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "dskg/errors.hpp"

namespace dskg::data {

using Spatial1D = std::function<double(double)>;
using SpaceTime1D = std::function<double(double, double)>;  // (x, t)

// Source in separated form f(x,t) = space(x) * time(t), with time support
// [time_lo, time_hi]. The spectral oracle needs this factorization (each
// Fourier mode then sees a scalar forcing); the quadrature solvers do not.
struct SeparableSource1D {
    Spatial1D space;
    double space_radius = 0.0;
    std::function<double(double)> time;
    double time_lo = 0.0;
    double time_hi = 0.0;
};

struct CauchyData1D {
    Spatial1D phi0;
    double phi0_radius = 0.0;
    Spatial1D phi1;
    double phi1_radius = 0.0;
    SpaceTime1D f;
    // Support radius of f(., t); values <= 0 declare the slice empty.
    std::function<double(double)> f_radius;
    // The same f in separated form when available (presets provide it).
    std::optional<SeparableSource1D> f_separable;
};

// Installs a separable source as the data's f, keeping the factorized form.
inline void set_source(CauchyData1D& d, SeparableSource1D s) {
    const SeparableSource1D src = s;
    d.f = [src](double x, double t) { return src.space(x) * src.time(t); };
    d.f_radius = [src](double t) {
        return (t >= src.time_lo && t <= src.time_hi) ? src.space_radius : 0.0;
    };
    d.f_separable = std::move(s);
}

// n-dimensional data; n=2 uses the first two vector components. Optional
// analytic gradients let the spherical means differentiate under the
// integral sign instead of falling back to finite differences.
using Vec = std::array<double, 3>;
using SpatialND = std::function<double(const Vec&)>;
using GradientND = std::function<Vec(const Vec&)>;
using SpaceTimeND = std::function<double(const Vec&, double)>;

struct CauchyDataND {
    int n = 3;
    SpatialND phi0;
    double phi0_radius = 0.0;
    GradientND grad_phi0;
    SpatialND phi1;
    double phi1_radius = 0.0;
    GradientND grad_phi1;
    SpaceTimeND f;
    std::function<double(double)> f_radius;
};

namespace detail {

inline void check_zero_outside(double value, const std::string& name) {
    if (value != 0.0) {
        throw DomainError("data callable '" + name +
                          "' is nonzero outside its declared support radius");
    }
}

}  // namespace detail

// Spot-checks that callables vanish outside their declared supports.
inline void spot_check_support(const CauchyData1D& d) {
    for (const double margin : {1e-6, 0.1, 1.0}) {
        if (d.phi0) {
            detail::check_zero_outside(d.phi0(d.phi0_radius + margin), "phi0");
            detail::check_zero_outside(d.phi0(-d.phi0_radius - margin), "phi0");
        }
        if (d.phi1) {
            detail::check_zero_outside(d.phi1(d.phi1_radius + margin), "phi1");
            detail::check_zero_outside(d.phi1(-d.phi1_radius - margin), "phi1");
        }
        if (d.f && d.f_radius) {
            for (const double t : {0.0, 0.5, 1.5, 3.0}) {
                const double r = d.f_radius(t);
                if (r > 0.0) {
                    detail::check_zero_outside(d.f(r + margin, t), "f");
                    detail::check_zero_outside(d.f(-r - margin, t), "f");
                }
            }
        }
    }
}

inline void spot_check_support(const CauchyDataND& d) {
    if (d.n < 2 || d.n > 3) {
        throw DomainError("only n in {2,3} is supported");
    }
    for (const double margin : {1e-6, 0.1, 1.0}) {
        const Vec dir{0.6, -0.8, 0.0};
        if (d.phi0) {
            const double r = d.phi0_radius + margin;
            detail::check_zero_outside(d.phi0({dir[0] * r, dir[1] * r, 0.0}), "phi0");
        }
        if (d.phi1) {
            const double r = d.phi1_radius + margin;
            detail::check_zero_outside(d.phi1({dir[0] * r, dir[1] * r, 0.0}), "phi1");
        }
    }
}

}  // namespace dskg::data
