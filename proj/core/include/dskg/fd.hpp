// Central finite differences with Richardson extrapolation, shared by the
// identity-verification suites and tests.
#pragma once

#include <array>

namespace dskg::fd {

// Plain central difference (f(x+h)-f(x-h))/(2h), O(h^2).
template <typename F>
auto central_diff(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Richardson-extrapolated central difference: `levels` halvings of the step
// eliminate the leading even-order error terms (levels=2 -> O(h^6)).
template <typename F>
auto richardson_diff(F&& f, double x, double h, int levels = 2) {
    using R = decltype(central_diff(f, x, h));
    std::array<R, 8> row{};
    const int n = levels < 0 ? 0 : (levels > 7 ? 7 : levels);
    for (int i = 0; i <= n; ++i) {
        R d = central_diff(f, x, h);
        // Neville update: row[j] holds the j-times-extrapolated estimate.
        double factor = 4.0;
        for (int j = 0; j < i; ++j) {
            R next = d + (d - row[j]) / (factor - 1.0);
            row[j] = d;
            d = next;
            factor *= 4.0;
        }
        row[i] = d;
        h *= 0.5;
    }
    return row[n];
}

}  // namespace dskg::fd
