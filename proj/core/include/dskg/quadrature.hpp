// Adaptive 1D quadrature: worst-panel-first bisection with a single
// Gauss-Kronrod 7/15 application per panel, or tanh-sinh for integrands with
// endpoint trouble. Panel budget and tolerances come from QuadratureSpec.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dskg/errors.hpp"

namespace dskg::quadrature {

struct QuadratureSpec {
    enum class Rule { gauss_legendre, tanh_sinh };
    Rule rule = Rule::gauss_legendre;
    int panels = 1 << 14;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
};

inline void validate(const QuadratureSpec& spec) {
    if (spec.panels < 1 || !(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw DomainError("quadrature spec requires panels >= 1 and positive tolerances");
    }
}

namespace detail {

struct Panel {
    double a, b, integral, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel apply_gk15(F& f, double a, double b) {
    double err = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, a, b, 0, 0.0, &err);
    return {a, b, integral, err};
}

template <typename F>
double integrate_adaptive(F& f, double a, double b, const QuadratureSpec& spec) {
    std::priority_queue<Panel> queue;
    queue.push(apply_gk15(f, a, b));
    double total = queue.top().integral;
    double total_err = queue.top().error;
    int panels = 1;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (panels >= spec.panels) {
            throw QuadratureFailure(
                "tolerance unreachable within panel budget " +
                std::to_string(spec.panels) + " (error " + std::to_string(total_err) + ")");
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Panel is at double resolution; its error cannot be reduced.
            throw QuadratureFailure("panel collapsed to machine width before reaching tolerance");
        }
        const Panel left = apply_gk15(f, worst.a, mid);
        const Panel right = apply_gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    // Compensated re-summation in spatial order removes the drift the
    // incremental updates accumulate.
    std::vector<Panel> panels_list;
    panels_list.reserve(static_cast<std::size_t>(panels));
    while (!queue.empty()) {
        panels_list.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels_list.begin(), panels_list.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double sum = 0.0, comp = 0.0;
    for (const Panel& p : panels_list) {
        const double y = p.integral - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

template <typename F>
double integrate_tanh_sinh(F& f, double a, double b, const QuadratureSpec& spec) {
    const int max_refinements =
        std::max(5, static_cast<int>(std::ceil(std::log2(static_cast<double>(spec.panels)))));
    boost::math::quadrature::tanh_sinh<double> integrator(max_refinements);
    double err = 0.0, l1 = 0.0;
    const double integral = integrator.integrate(f, a, b, spec.rel_tol, &err, &l1);
    // tanh_sinh reports the relative error of the last refinement step.
    if (err * l1 > std::max(spec.abs_tol, spec.rel_tol * std::abs(integral)) &&
        err > spec.rel_tol) {
        throw QuadratureFailure("tanh-sinh did not reach tolerance (err " +
                                std::to_string(err) + ")");
    }
    return integral;
}

}  // namespace detail

// Integrate f over [a,b] (orientation-aware) with the rule chosen in spec.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
    validate(spec);
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    if (spec.rule == QuadratureSpec::Rule::tanh_sinh) {
        return sign * detail::integrate_tanh_sinh(f, a, b, spec);
    }
    return sign * detail::integrate_adaptive(f, a, b, spec);
}

// Adaptive Gauss-Kronrod on [a, a+frac*(b-a)] plus tanh-sinh on the trailing
// piece; used for integrals whose integrand needs endpoint care at b. If the
// tanh-sinh error estimate stalls -- it does when the trailing piece contains
// an interior feature rather than endpoint decay -- the tail is redone with
// adaptive panels, whose nodes also never touch b.
template <typename F>
double integrate_endpoint_guarded(F&& f, double a, double b,
                                  const QuadratureSpec& spec, double frac = 0.99) {
    validate(spec);
    if (a == b) return 0.0;
    const double split = a + frac * (b - a);
    QuadratureSpec main_spec = spec;
    main_spec.rule = QuadratureSpec::Rule::gauss_legendre;
    QuadratureSpec edge_spec = spec;
    edge_spec.rule = QuadratureSpec::Rule::tanh_sinh;
    double tail = 0.0;
    try {
        tail = integrate(f, split, b, edge_spec);
    } catch (const QuadratureFailure&) {
        tail = integrate(f, split, b, main_spec);
    }
    return integrate(f, a, split, main_spec) + tail;
}

}  // namespace dskg::quadrature
