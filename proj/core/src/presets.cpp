#include "dskg/presets.hpp"

#include <cmath>

#include "dskg/errors.hpp"

namespace dskg::presets {

double mollifier(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(1.0 / (y * y - 1.0));
}

double mollifier_deriv(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    const double d = y * y - 1.0;
    return mollifier(y) * (-2.0 * y / (d * d));
}

RadialProfile shell_profile() {
    RadialProfile p;
    p.value = [](double r) { return mollifier((r - 0.5) / 0.1); };
    p.deriv = [](double r) { return mollifier_deriv((r - 0.5) / 0.1) / 0.1; };
    p.radius = 0.6;
    return p;
}

data::SeparableSource1D source_pulse() {
    data::SeparableSource1D s;
    s.space = [](double x) { return mollifier(x / 0.4); };
    s.space_radius = 0.4;
    s.time = [](double b) { return mollifier((b - 0.5) / 0.4); };
    s.time_lo = 0.1;
    s.time_hi = 0.9;
    return s;
}

namespace {

data::CauchyDataND shell_3d() {
    const RadialProfile shell = shell_profile();
    data::CauchyDataND d;
    d.n = 3;
    d.phi1 = [shell](const data::Vec& y) {
        return shell.value(std::hypot(y[0], y[1], y[2]));
    };
    d.phi1_radius = shell.radius;
    d.grad_phi1 = [shell](const data::Vec& y) {
        const double r = std::hypot(y[0], y[1], y[2]);
        if (r < 0.4 || r > 0.6) return data::Vec{0.0, 0.0, 0.0};
        const double s = shell.deriv(r) / r;
        return data::Vec{s * y[0], s * y[1], s * y[2]};
    };
    return d;
}

}  // namespace

PresetData preset_data(const std::string& name) {
    if (name == "bump-phi0") {
        data::CauchyData1D d;
        d.phi0 = [](double x) { return mollifier(x); };
        d.phi0_radius = 1.0;
        return d;
    }
    if (name == "bump-phi1") {
        data::CauchyData1D d;
        d.phi1 = [](double x) { return mollifier(x); };
        d.phi1_radius = 1.0;
        return d;
    }
    if (name == "shell-3d") {
        return shell_3d();
    }
    if (name == "source-pulse") {
        data::CauchyData1D d;
        data::set_source(d, source_pulse());
        return d;
    }
    if (name == "mode-cos") {
        data::CauchyData1D d;
        d.phi0 = [](double x) {
            return std::cos(4.0 * x) * mollifier(x / 6.0);
        };
        d.phi0_radius = 6.0;
        return d;
    }
    throw UnknownPreset("unknown preset '" + name +
                        "'; available: bump-phi0, bump-phi1, shell-3d, "
                        "source-pulse, mode-cos");
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "bump-phi0", "bump-phi1", "shell-3d", "source-pulse", "mode-cos"};
    return names;
}

}  // namespace dskg::presets
