#include "dskg/oracle.hpp"

#include <gsl/gsl_fft_complex.h>

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>

#include "dskg/errors.hpp"
#include "dskg/parallel.hpp"

namespace dskg::oracle {

namespace {

constexpr int kMaxStepsBetweenOutputs = 200000;

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

// Sorted unique output times with t = 0 prepended (the integration start),
// plus the map from each requested time to its slot in the sorted list.
struct TimeSchedule {
    std::vector<double> unique_times;     // ascending, starts at 0
    std::vector<std::size_t> request_slot;  // per requested time
};

TimeSchedule build_schedule(const std::vector<double>& ts) {
    if (ts.empty()) {
        throw DomainError("at least one output time is required");
    }
    for (const double t : ts) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw DomainError("output times must be finite and >= 0");
        }
    }
    TimeSchedule sched;
    sched.unique_times = ts;
    sched.unique_times.push_back(0.0);
    std::sort(sched.unique_times.begin(), sched.unique_times.end());
    sched.unique_times.erase(
        std::unique(sched.unique_times.begin(), sched.unique_times.end()),
        sched.unique_times.end());
    sched.request_slot.reserve(ts.size());
    for (const double t : ts) {
        const auto it = std::lower_bound(sched.unique_times.begin(),
                                         sched.unique_times.end(), t);
        sched.request_slot.push_back(
            static_cast<std::size_t>(it - sched.unique_times.begin()));
    }
    return sched;
}

std::vector<double> uniform_nodes(double half_length, int n) {
    const double h = 2.0 * half_length / n;
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) xs[static_cast<std::size_t>(j)] = -half_length + j * h;
    return xs;
}

void require_fits(double radius, double horizon, double half_length,
                  const char* what) {
    if (radius > 0.0 && radius + horizon > 0.95 * half_length) {
        throw DomainError(std::string(what) +
                          " support plus propagation horizon does not fit the "
                          "periodic domain; enlarge half_length");
    }
}

// Forward FFT (GSL radix-2, interleaved re/im) of real samples.
std::vector<double> forward_fft(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    std::vector<double> packed(2 * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) packed[2 * j] = samples[j];
    gsl_fft_complex_radix2_forward(packed.data(), 1, n);
    return packed;
}

}  // namespace

double GridSolution::value_at(double x, double t) const {
    if (u.empty() || xs.size() < 7) {
        throw DomainError("grid solution holds too few samples");
    }
    std::size_t row = ts.size();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (std::abs(ts[i] - t) <= 1e-12 * (1.0 + std::abs(t))) {
            row = i;
            break;
        }
    }
    if (row == ts.size()) {
        throw DomainError("requested time is not among the stored rows");
    }
    const std::vector<double>& vals = u[row];
    const double h = xs[1] - xs[0];
    const double pos = (x - xs.front()) / h;
    const auto nearest = static_cast<long>(std::lround(pos));
    if (nearest >= 0 && nearest < static_cast<long>(xs.size()) &&
        std::abs(x - xs[static_cast<std::size_t>(nearest)]) <=
            1e-13 * (1.0 + std::abs(x))) {
        return vals[static_cast<std::size_t>(nearest)];
    }
    if (x < xs.front() || x > xs.back()) {
        throw DomainError("requested point lies outside the stored grid");
    }
    // Local degree-6 barycentric interpolation on the 7 nodes around x;
    // weights for uniform nodes are alternating binomials C(6,j).
    static constexpr std::array<double, 7> kWeights = {1.0,  -6.0, 15.0, -20.0,
                                                       15.0, -6.0, 1.0};
    long lo = static_cast<long>(std::floor(pos)) - 3;
    lo = std::clamp(lo, 0L, static_cast<long>(xs.size()) - 7L);
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < 7; ++j) {
        const std::size_t idx = static_cast<std::size_t>(lo + j);
        const double dx = x - xs[idx];
        if (dx == 0.0) return vals[idx];
        const double w = kWeights[static_cast<std::size_t>(j)] / dx;
        num += w * vals[idx];
        den += w;
    }
    return num / den;
}

GridSolution spectral_solve_1d(const data::CauchyData1D& d,
                               kernels::CurvedMass mass,
                               const SpectralConfig& cfg,
                               const std::vector<double>& ts) {
    if (!is_power_of_two(cfg.modes) || cfg.modes < 8) {
        throw DomainError("modes must be a power of two >= 8");
    }
    if (!(cfg.half_length > 0.0) || !std::isfinite(cfg.half_length)) {
        throw DomainError("half_length must be positive");
    }
    if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) {
        throw DomainError("tolerances must be positive");
    }
    if (d.f && !d.f_separable) {
        throw DomainError(
            "the spectral solver needs the source in separable form");
    }
    const TimeSchedule sched = build_schedule(ts);
    const double t_max = sched.unique_times.back();
    const double horizon = cfg.flat_speed ? t_max : 1.0;
    require_fits(d.phi0_radius, horizon, cfg.half_length, "phi0");
    require_fits(d.phi1_radius, horizon, cfg.half_length, "phi1");
    if (d.f_separable) {
        require_fits(d.f_separable->space_radius, horizon, cfg.half_length,
                     "source");
    }

    const std::size_t n = static_cast<std::size_t>(cfg.modes);
    const std::size_t n_times = sched.unique_times.size();
    GridSolution out;
    out.xs = uniform_nodes(cfg.half_length, cfg.modes);

    std::vector<double> s0(n, 0.0);
    std::vector<double> s1(n, 0.0);
    std::vector<double> sg(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (d.phi0) s0[j] = d.phi0(out.xs[j]);
        if (d.phi1) s1[j] = d.phi1(out.xs[j]);
        if (d.f_separable && d.f_separable->space) {
            sg[j] = d.f_separable->space(out.xs[j]);
        }
    }
    const std::vector<double> hat0 = forward_fft(s0);
    const std::vector<double> hat1 = forward_fft(s1);
    const std::vector<double> hatg = forward_fft(sg);

    std::function<double(double)> time_factor;
    if (d.f_separable) {
        const auto src = *d.f_separable;
        time_factor = [src](double t) {
            return (t >= src.time_lo && t <= src.time_hi) ? src.time(t) : 0.0;
        };
    }

    // One complex oscillator per independent mode k = 0..N/2; the remaining
    // modes are conjugate mirrors because the data and the equation are real.
    using State = std::array<double, 4>;  // Re u, Im u, Re u', Im u'
    const std::size_t n_modes = n / 2 + 1;
    std::vector<std::vector<State>> snaps(
        n_modes, std::vector<State>(n_times, State{0.0, 0.0, 0.0, 0.0}));

    const double mass2 = mass.M * mass.M;
    const double xi_unit = M_PI / cfg.half_length;
    const bool flat = cfg.flat_speed;

    parallel_for(n_modes, cfg.threads, [&](std::size_t k) {
        State y{hat0[2 * k], hat0[2 * k + 1], hat1[2 * k], hat1[2 * k + 1]};
        const double g_re = hatg[2 * k];
        const double g_im = hatg[2 * k + 1];
        const bool forced =
            time_factor && (std::abs(g_re) + std::abs(g_im) > 0.0);
        if (!forced && y[0] == 0.0 && y[1] == 0.0 && y[2] == 0.0 &&
            y[3] == 0.0) {
            return;  // mode carries nothing
        }
        const double xi2 = (xi_unit * k) * (xi_unit * k);
        auto rhs = [&](const State& s, State& ds, double t) {
            const double speed2 = flat ? 1.0 : std::exp(-2.0 * t);
            const double omega2 = speed2 * xi2 + mass2;
            double f_re = 0.0;
            double f_im = 0.0;
            if (forced) {
                const double amp = time_factor(t);
                f_re = g_re * amp;
                f_im = g_im * amp;
            }
            ds[0] = s[2];
            ds[1] = s[3];
            ds[2] = -omega2 * s[0] + f_re;
            ds[3] = -omega2 * s[1] + f_im;
        };
        auto stepper = boost::numeric::odeint::make_controlled(
            cfg.atol, cfg.rtol,
            boost::numeric::odeint::runge_kutta_dopri5<State>());
        std::size_t slot = 0;
        auto observer = [&](const State& s, double /*t*/) {
            snaps[k][slot++] = s;
        };
        const double dt0 = std::min(1e-3, (t_max > 0.0 ? t_max : 1.0) / 16.0);
        try {
            boost::numeric::odeint::integrate_times(
                stepper, rhs, y, sched.unique_times.begin(),
                sched.unique_times.end(), dt0, observer,
                boost::numeric::odeint::max_step_checker(
                    kMaxStepsBetweenOutputs));
        } catch (const boost::numeric::odeint::odeint_error& e) {
            throw StiffnessFailure(
                std::string("adaptive mode integration stalled: ") + e.what());
        } catch (const std::overflow_error& e) {
            // integrate_times reports too many consecutive step rejections
            // with a plain overflow_error.
            throw StiffnessFailure(
                std::string("adaptive mode integration stalled: ") + e.what());
        }
    });

    // Assemble the requested rows by inverse FFT of the mirrored spectrum.
    const bool track_energy = !d.f && !d.f_separable;
    std::vector<std::vector<double>> rows(n_times);
    std::vector<double> row_energy(n_times, 0.0);
    for (std::size_t m = 0; m < n_times; ++m) {
        std::vector<double> spec(2 * n, 0.0);
        for (std::size_t k = 0; k <= n / 2; ++k) {
            const State& s = snaps[k][m];
            spec[2 * k] = s[0];
            spec[2 * k + 1] = s[1];
            if (k != 0 && k != n / 2) {
                spec[2 * (n - k)] = s[0];
                spec[2 * (n - k) + 1] = -s[1];
            }
        }
        if (track_energy) {
            const double t = sched.unique_times[m];
            const double speed2 = flat ? 1.0 : std::exp(-2.0 * t);
            double e = 0.0;
            for (std::size_t k = 0; k <= n / 2; ++k) {
                const State& s = snaps[k][m];
                const double xi2 = (xi_unit * k) * (xi_unit * k);
                const double mult = (k == 0 || k == n / 2) ? 1.0 : 2.0;
                e += mult * (s[2] * s[2] + s[3] * s[3] +
                             (speed2 * xi2 + mass2) * (s[0] * s[0] + s[1] * s[1]));
            }
            row_energy[m] =
                e * (2.0 * cfg.half_length) / (static_cast<double>(n) * n);
        }
        gsl_fft_complex_radix2_inverse(spec.data(), 1, n);
        rows[m].resize(n);
        for (std::size_t j = 0; j < n; ++j) rows[m][j] = spec[2 * j];
    }

    out.ts = ts;
    out.u.reserve(ts.size());
    if (track_energy) out.energy.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::size_t slot = sched.request_slot[i];
        out.u.push_back(rows[slot]);
        if (track_energy) out.energy.push_back(row_energy[slot]);
    }
    return out;
}

GridSolution fd_solve_1d(const data::CauchyData1D& d, kernels::CurvedMass mass,
                         const FDConfig& cfg, const std::vector<double>& ts) {
    if (!(cfg.half_length > 0.0) || !(cfg.dx > 0.0) ||
        !std::isfinite(cfg.half_length) || !std::isfinite(cfg.dx)) {
        throw DomainError("half_length and dx must be positive");
    }
    const auto n_long = std::lround(2.0 * cfg.half_length / cfg.dx);
    if (n_long < 16) {
        throw DomainError("grid resolves fewer than 16 nodes");
    }
    const std::size_t n = static_cast<std::size_t>(n_long);
    const double dx = 2.0 * cfg.half_length / static_cast<double>(n);
    const double dt = cfg.dt > 0.0 ? cfg.dt : cfg.cfl * dx;
    // The propagation speed e^(-t) never exceeds its t=0 value 1, so the
    // leapfrog stability bound is checked against speed 1.
    if (!(dt > 0.0) || dt > 0.9 * dx * (1.0 + 1e-12)) {
        throw CFLViolation("time step exceeds 0.9 * dx (unit speed at t = 0)");
    }

    const TimeSchedule sched = build_schedule(ts);
    GridSolution out;
    out.xs = uniform_nodes(cfg.half_length, static_cast<int>(n));

    std::vector<double> u_prev(n, 0.0);
    std::vector<double> u_cur(n, 0.0);
    std::vector<double> u_next(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (d.phi0) u_prev[j] = d.phi0(out.xs[j]);
    }
    const double mass2 = mass.M * mass.M;
    auto laplacian = [&](const std::vector<double>& v, std::size_t j) {
        const std::size_t jl = (j == 0) ? n - 1 : j - 1;
        const std::size_t jr = (j == n - 1) ? 0 : j + 1;
        return (v[jl] - 2.0 * v[j] + v[jr]) / (dx * dx);
    };
    // Second-order Taylor start: u(dt) = u0 + dt u_t + dt^2/2 u_tt with
    // u_tt = e^(0) u_xx - M^2 u + f at t = 0.
    for (std::size_t j = 0; j < n; ++j) {
        const double phi1 = d.phi1 ? d.phi1(out.xs[j]) : 0.0;
        const double f0 = d.f ? d.f(out.xs[j], 0.0) : 0.0;
        const double acc = laplacian(u_prev, j) - mass2 * u_prev[j] + f0;
        u_cur[j] = u_prev[j] + dt * phi1 + 0.5 * dt * dt * acc;
    }

    std::vector<std::vector<double>> rows(sched.unique_times.size());
    std::size_t next_out = 0;
    auto emit_between = [&](const std::vector<double>& a,
                            const std::vector<double>& b, double ta,
                            double tb) {
        while (next_out < sched.unique_times.size() &&
               sched.unique_times[next_out] <= tb + 1e-12 * (1.0 + tb)) {
            const double t_want = sched.unique_times[next_out];
            const double w = std::clamp((t_want - ta) / (tb - ta), 0.0, 1.0);
            std::vector<double> row(n);
            for (std::size_t j = 0; j < n; ++j) {
                row[j] = (1.0 - w) * a[j] + w * b[j];
            }
            rows[next_out++] = std::move(row);
        }
    };
    if (sched.unique_times.front() == 0.0) {
        rows[0] = u_prev;
        next_out = 1;
    }
    const double t_final = sched.unique_times.back();
    double t_cur = dt;  // u_cur sits at t = dt, u_prev at t = 0
    emit_between(u_prev, u_cur, 0.0, dt);
    while (next_out < sched.unique_times.size()) {
        const double speed2 = std::exp(-2.0 * t_cur);
        for (std::size_t j = 0; j < n; ++j) {
            const double f_val = d.f ? d.f(out.xs[j], t_cur) : 0.0;
            const double acc =
                speed2 * laplacian(u_cur, j) - mass2 * u_cur[j] + f_val;
            u_next[j] = 2.0 * u_cur[j] - u_prev[j] + dt * dt * acc;
        }
        emit_between(u_cur, u_next, t_cur, t_cur + dt);
        u_prev.swap(u_cur);
        u_cur.swap(u_next);
        t_cur += dt;
        if (t_cur > t_final + 2.0 * dt) break;  // all outputs emitted above
    }
    if (next_out < sched.unique_times.size()) {
        throw NonConvergent("time marching ended before the last output");
    }

    out.ts = ts;
    out.u.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out.u.push_back(rows[sched.request_slot[i]]);
    }
    return out;
}

GridSolution radial_reduce_3d(const RadialData3D& d, kernels::CurvedMass mass,
                              const SpectralConfig& cfg,
                              const std::vector<double>& ts) {
    data::CauchyData1D w;
    if (d.phi0) {
        const auto p = d.phi0;
        w.phi0 = [p](double x) { return x * p(std::abs(x)); };
        w.phi0_radius = d.radius;
    }
    if (d.phi1) {
        const auto p = d.phi1;
        w.phi1 = [p](double x) { return x * p(std::abs(x)); };
        w.phi1_radius = d.radius;
    }
    if (d.f) {
        data::SeparableSource1D s = *d.f;
        const auto g = d.f->space;
        s.space = [g](double x) { return x * g(std::abs(x)); };
        data::set_source(w, std::move(s));
    }
    const GridSolution w_grid = spectral_solve_1d(w, mass, cfg, ts);

    const std::size_t n = w_grid.xs.size();
    const std::size_t j0 = n / 2;  // node at x = 0 (exact for power-of-two n)
    const double h = w_grid.xs[1] - w_grid.xs[0];
    GridSolution out;
    out.ts = w_grid.ts;
    out.xs.assign(w_grid.xs.begin() + static_cast<std::ptrdiff_t>(j0),
                  w_grid.xs.end());
    out.u.resize(w_grid.u.size());
    for (std::size_t m = 0; m < w_grid.u.size(); ++m) {
        const std::vector<double>& wrow = w_grid.u[m];
        std::vector<double>& urow = out.u[m];
        urow.resize(out.xs.size());
        // u(0,t) = w_x(0,t); odd symmetry gives the one-sided O(h^6) stencil
        // (45 w(h) - 9 w(2h) + w(3h)) / (30h).
        urow[0] = (45.0 * wrow[j0 + 1] - 9.0 * wrow[j0 + 2] + wrow[j0 + 3]) /
                  (30.0 * h);
        for (std::size_t i = 1; i < urow.size(); ++i) {
            urow[i] = wrow[j0 + i] / out.xs[i];
        }
    }
    return out;
}

}  // namespace dskg::oracle
