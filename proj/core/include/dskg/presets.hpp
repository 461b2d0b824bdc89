// Named analytic Cauchy data sets with known support radii and derivatives,
// shared by the command-line tool and the test suites.
#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "dskg/data.hpp"

namespace dskg::presets {

// The standard mollifier exp(1/(y^2 - 1)) on |y| < 1, 0 outside (smooth with
// compact support), and its derivative.
double mollifier(double y);
double mollifier_deriv(double y);

// A radial profile with value, derivative, and support radius — the building
// block the n-dimensional presets share with radial solvers.
struct RadialProfile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    double radius = 0.0;
};

// Shell profile mollifier((r - 1/2) / 0.1), supported in 0.4 < r < 0.6 (the
// radial factor of the "shell-3d" preset).
RadialProfile shell_profile();

// The separated factors of the "source-pulse" preset:
//   f(x, b) = mollifier(x / 0.4) * mollifier((b - 1/2) / 0.4),
// supported in |x| < 0.4, 0.1 < b < 0.9.
data::SeparableSource1D source_pulse();

using PresetData = std::variant<data::CauchyData1D, data::CauchyDataND>;

// Documented presets:
//   bump-phi0     1D: phi0 = mollifier, radius 1
//   bump-phi1     1D: phi1 = mollifier, radius 1
//   shell-3d      n = 3: phi1 = shell_profile lifted to R^3, with gradient
//   source-pulse  1D: source_pulse installed as f, zero initial data
//   mode-cos      1D: phi0 = cos(4x) windowed by mollifier(x/6), radius 6
// Any other name raises UnknownPreset.
PresetData preset_data(const std::string& name);

// The documented preset names, in the order above.
const std::vector<std::string>& preset_names();

}  // namespace dskg::presets
