// Command-line front end: kernel evaluation, 1D and nD Cauchy solving,
// reference-oracle runs, the kernel identity suite, decay-envelope sweeps,
// and integral-bound sweeps.
//
// Artifact model: with --out STEM every command writes its CSV/JSON
// artifacts under STEM plus a STEM.manifest.json carrying the tool version,
// the effective parameters, and their FNV-1a hash; without --out the
// primary artifact goes to stdout. CSV bodies are deterministic for a fixed
// configuration and seed (numbers are printed with 17 significant digits;
// thread count never affects values). Exit codes: 0 success, 2 invalid
// configuration, 3 numerical failure.
#include <cmath>
#include <complex>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "dskg/cauchy.hpp"
#include "dskg/data.hpp"
#include "dskg/errors.hpp"
#include "dskg/estimates.hpp"
#include "dskg/io.hpp"
#include "dskg/kernels.hpp"
#include "dskg/oracle.hpp"
#include "dskg/parallel.hpp"
#include "dskg/presets.hpp"
#include "dskg/quadrature.hpp"
#include "dskg/spherical.hpp"

#ifndef DSKG_VERSION
#define DSKG_VERSION "0.0.0"
#endif

namespace {

using dskg::io::Config;
using json = nlohmann::json;

std::string iso_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------
// Config-file merge: flat key=value entries fill in options the command line
// left at their defaults; flags always win. Unknown keys are rejected.

class ConfigMerge {
  public:
    void load(const std::string& path) {
        if (!path.empty()) file_ = dskg::io::read_config_file(path);
    }

    void merge(const CLI::Option* opt, const std::string& key, double& var) {
        const std::string* raw = lookup(opt, key);
        if (raw) var = to_double(key, *raw);
    }
    void merge(const CLI::Option* opt, const std::string& key, int& var) {
        const std::string* raw = lookup(opt, key);
        if (raw) var = static_cast<int>(to_ll(key, *raw));
    }
    void merge(const CLI::Option* opt, const std::string& key,
               std::uint64_t& var) {
        const std::string* raw = lookup(opt, key);
        if (raw) var = static_cast<std::uint64_t>(to_ll(key, *raw));
    }
    void merge(const CLI::Option* opt, const std::string& key,
               std::string& var) {
        const std::string* raw = lookup(opt, key);
        if (raw) var = *raw;
    }
    void merge(const CLI::Option* opt, const std::string& key, bool& var) {
        const std::string* raw = lookup(opt, key);
        if (!raw) return;
        if (*raw == "1" || *raw == "true" || *raw == "on") {
            var = true;
        } else if (*raw == "0" || *raw == "false" || *raw == "off") {
            var = false;
        } else {
            throw dskg::DomainError("config key '" + key +
                                    "' expects a boolean, got '" + *raw + "'");
        }
    }
    void merge(const CLI::Option* opt, const std::string& key,
               std::vector<double>& var) {
        const std::string* raw = lookup(opt, key);
        if (!raw) return;
        var.clear();
        std::string piece;
        std::istringstream in(*raw);
        while (std::getline(in, piece, ',')) {
            if (!piece.empty()) var.push_back(to_double(key, piece));
        }
        if (var.empty()) {
            throw dskg::DomainError("config key '" + key +
                                    "' has no values: '" + *raw + "'");
        }
    }

    // Rejects file keys that no merge() call claimed.
    void finish() const {
        for (const auto& [k, v] : file_) {
            if (!known_.count(k)) {
                throw dskg::DomainError("unknown config key '" + k + "'");
            }
        }
    }

  private:
    const std::string* lookup(const CLI::Option* opt, const std::string& key) {
        known_.insert(key);
        if (opt != nullptr && opt->count() > 0) return nullptr;
        const auto it = file_.find(key);
        return it == file_.end() ? nullptr : &it->second;
    }
    static double to_double(const std::string& key, const std::string& s) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos != s.size()) {
            throw dskg::DomainError("config key '" + key +
                                    "' is not a number: '" + s + "'");
        }
        return v;
    }
    static long long to_ll(const std::string& key, const std::string& s) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != s.size()) {
            throw dskg::DomainError("config key '" + key +
                                    "' is not an integer: '" + s + "'");
        }
        return v;
    }

    Config file_;
    std::set<std::string> known_;
};

// ---------------------------------------------------------------------------
// Effective-parameter map (hash preimage) helpers.

void put(Config& c, const std::string& k, double v) {
    c[k] = dskg::io::format_double(v);
}
void put(Config& c, const std::string& k, int v) { c[k] = std::to_string(v); }
void put(Config& c, const std::string& k, std::uint64_t v) {
    c[k] = std::to_string(v);
}
void put(Config& c, const std::string& k, const std::string& v) { c[k] = v; }
void put(Config& c, const std::string& k, const std::vector<double>& v) {
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) joined += ',';
        joined += dskg::io::format_double(v[i]);
    }
    c[k] = joined;
}

// ---------------------------------------------------------------------------
// Artifact emitter: files under the --out stem, or stdout without one.

class Emitter {
  public:
    Emitter(std::string command, std::string stem, Config params)
        : command_(std::move(command)),
          stem_(std::move(stem)),
          params_(std::move(params)),
          hash_(dskg::io::hex64(dskg::io::config_hash(params_))) {}

    const std::string& hash() const { return hash_; }
    bool to_files() const { return !stem_.empty(); }

    void csv(const std::string& suffix, const std::vector<std::string>& header,
             const std::vector<std::vector<std::string>>& rows) {
        std::string body = dskg::io::csv_line(header) + "\n";
        for (const auto& r : rows) body += dskg::io::csv_line(r) + "\n";
        if (!to_files()) {
            std::cout << body;
            return;
        }
        const std::string path = stem_ + suffix;
        write_file(path, body);
    }

    void json_doc(const std::string& suffix, const json& doc) {
        const std::string body = doc.dump(2) + "\n";
        if (!to_files()) {
            std::cout << body;
            return;
        }
        write_file(stem_ + suffix, body);
    }

    void manifest() {
        if (!to_files()) return;
        json m;
        m["tool"] = "dskg";
        m["version"] = DSKG_VERSION;
        m["command"] = command_;
        m["parameters"] = params_;
        m["config_hash"] = hash_;
        m["outputs"] = files_;
        m["generated"] = iso_utc_now();
        write_file(stem_ + ".manifest.json", m.dump(2) + "\n");
    }

  private:
    void write_file(const std::string& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw dskg::DomainError("cannot open output file '" + path + "'");
        }
        out << body;
        files_.push_back(path);
        dskg::io::log(dskg::io::LogLevel::info, "wrote " + path);
    }

    std::string command_;
    std::string stem_;
    Config params_;
    std::string hash_;
    std::vector<std::string> files_;
};

// ---------------------------------------------------------------------------
// Shared option bundles.

struct CommonOpts {
    std::string config_path;
    std::string out;
    int threads = 0;
    std::uint64_t seed = 20260814;

    CLI::Option* config_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
    CLI::Option* seed_opt = nullptr;

    void attach(CLI::App* cmd) {
        config_opt = cmd->add_option("--config", config_path,
                                     "Flat key=value config file; command-line "
                                     "flags override its entries");
        out_opt = cmd->add_option(
            "--out", out,
            "Output stem; artifacts go to <stem>.csv / <stem>.json plus "
            "<stem>.manifest.json (default: primary artifact on stdout)");
        threads_opt =
            cmd->add_option("--threads", threads,
                            "Worker threads for sweeps (0 = all available)");
        seed_opt = cmd->add_option("--seed", seed,
                                   "Seed for randomized verification suites");
    }

    void merge(ConfigMerge& cm) {
        cm.load(config_path);
        cm.merge(out_opt, "out", out);
        cm.merge(threads_opt, "threads", threads);
        cm.merge(seed_opt, "seed", seed);
    }
};

dskg::quadrature::QuadratureSpec solver_spec(double rel_tol) {
    if (!(rel_tol > 0.0) || rel_tol > 0.1) {
        throw dskg::DomainError("--tol must lie in (0, 0.1]");
    }
    dskg::quadrature::QuadratureSpec q;
    q.rel_tol = rel_tol;
    q.abs_tol = 0.01 * rel_tol;
    return q;
}

// Support radius of 1D data (horizon excluded); sources are scanned across
// their time window when only f_radius is available.
double data_radius_1d(const dskg::data::CauchyData1D& d, double t_max) {
    double r = std::max(d.phi0_radius, d.phi1_radius);
    if (d.f_separable) {
        r = std::max(r, d.f_separable->space_radius);
    } else if (d.f_radius) {
        for (int i = 0; i <= 64; ++i) {
            r = std::max(r, d.f_radius(t_max * i / 64.0));
        }
    }
    return r;
}

std::vector<double> uniform(double lo, double hi, int count) {
    if (count < 2 || !(hi > lo)) {
        throw dskg::DomainError("grid needs at least 2 points and hi > lo");
    }
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        xs[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) /
                     static_cast<double>(count - 1);
    }
    return xs;
}

json identity_report_json(const dskg::kernels::KernelIdentityReport& rep) {
    json j;
    j["M"] = rep.M;
    j["seed"] = rep.seed;
    j["all_pass"] = rep.all_pass;
    j["identities"] = json::array();
    for (const auto& id : rep.identities) {
        j["identities"].push_back({{"name", id.name},
                                   {"max_residual", id.max_residual},
                                   {"threshold", id.threshold},
                                   {"samples", id.samples},
                                   {"pass", id.pass}});
    }
    return j;
}

// =====================================================================
// kernel
// =====================================================================

struct KernelOpts {
    CommonOpts common;
    double M = 1.0, x = 0.0, t = 1.0, x0 = 0.0, t0 = 1.0, z = 0.25;
    double tol = 1e-12;
    std::string kind = "E";
    CLI::Option *M_o{}, *x_o{}, *t_o{}, *x0_o{}, *t0_o{}, *z_o{}, *tol_o{},
        *kind_o{};
};

int run_kernel(KernelOpts& o) {
    ConfigMerge cm;
    o.common.merge(cm);
    cm.merge(o.M_o, "M", o.M);
    cm.merge(o.x_o, "x", o.x);
    cm.merge(o.t_o, "t", o.t);
    cm.merge(o.x0_o, "x0", o.x0);
    cm.merge(o.t0_o, "t0", o.t0);
    cm.merge(o.z_o, "z", o.z);
    cm.merge(o.tol_o, "tol", o.tol);
    cm.merge(o.kind_o, "kind", o.kind);
    cm.finish();

    const dskg::kernels::CurvedMass mass(o.M);
    double value = 0.0;
    double xcol = o.x;
    if (o.kind == "E") {
        value = dskg::kernels::evaluate_E({o.x, o.t, o.x0, o.t0}, mass, o.tol)
                    .value;
    } else if (o.kind == "K0") {
        value = dskg::kernels::evaluate_K0(o.z, o.t, mass, o.tol).value;
        xcol = o.z;
    } else if (o.kind == "K1") {
        value = dskg::kernels::evaluate_K1(o.z, o.t, mass, o.tol).value;
        xcol = o.z;
    } else {
        throw dskg::DomainError("--kind must be E, K0, or K1");
    }

    std::cout << dskg::io::format_double(value) << '\n';

    Config params;
    put(params, "command", std::string("kernel"));
    put(params, "kind", o.kind);
    put(params, "M", o.M);
    put(params, "x", o.x);
    put(params, "t", o.t);
    put(params, "x0", o.x0);
    put(params, "t0", o.t0);
    put(params, "z", o.z);
    put(params, "tol", o.tol);
    put(params, "seed", o.common.seed);
    Emitter em("kernel", o.common.out, std::move(params));
    if (em.to_files()) {
        em.csv(".csv", {"x", "t", "u"},
               {{dskg::io::format_double(xcol), dskg::io::format_double(o.t),
                 dskg::io::format_double(value)}});
        em.manifest();
    }
    return 0;
}

// =====================================================================
// solve1d
// =====================================================================

struct Solve1DOpts {
    CommonOpts common;
    std::string preset;
    double M = 1.0;
    std::vector<double> ts = {0.5, 1.0, 2.0};
    int nx = 257;
    double xmin = std::nan(""), xmax = std::nan("");
    double tol = 1e-8;
    CLI::Option *preset_o{}, *M_o{}, *t_o{}, *nx_o{}, *xmin_o{}, *xmax_o{},
        *tol_o{};
};

int run_solve1d(Solve1DOpts& o) {
    ConfigMerge cm;
    o.common.merge(cm);
    cm.merge(o.preset_o, "preset", o.preset);
    cm.merge(o.M_o, "M", o.M);
    cm.merge(o.t_o, "t", o.ts);
    cm.merge(o.nx_o, "nx", o.nx);
    cm.merge(o.xmin_o, "xmin", o.xmin);
    cm.merge(o.xmax_o, "xmax", o.xmax);
    cm.merge(o.tol_o, "tol", o.tol);
    cm.finish();
    if (o.preset.empty()) {
        throw dskg::DomainError("solve1d requires --preset (or preset= in "
                                "the config file)");
    }

    auto pd = dskg::presets::preset_data(o.preset);
    auto* d = std::get_if<dskg::data::CauchyData1D>(&pd);
    if (d == nullptr) {
        throw dskg::DomainError("preset '" + o.preset +
                                "' is n-dimensional; use solve-nd");
    }
    double t_max = 0.0;
    for (double t : o.ts) {
        if (!(t >= 0.0)) throw dskg::DomainError("--t values must be >= 0");
        t_max = std::max(t_max, t);
    }
    if (std::isnan(o.xmin) != std::isnan(o.xmax)) {
        throw dskg::DomainError("--xmin and --xmax must be given together");
    }
    if (std::isnan(o.xmin)) {
        const double half = data_radius_1d(*d, t_max) + 1.0 + 0.5;
        o.xmin = -half;
        o.xmax = half;
    }

    const auto spec = solver_spec(o.tol);
    const dskg::kernels::CurvedMass mass(o.M);
    const auto u = d->f ? dskg::cauchy::solve_source_1d(*d, mass, spec)
                        : dskg::cauchy::solve_homogeneous_1d(*d, mass, spec);
    dskg::io::log(dskg::io::LogLevel::info,
                  "solve1d preset=" + o.preset + " M=" +
                      dskg::io::format_double(o.M) + " grid " +
                      std::to_string(o.nx) + " x " +
                      std::to_string(o.ts.size()));
    const auto xs = uniform(o.xmin, o.xmax, o.nx);
    const auto grid =
        dskg::cauchy::evaluate_grid(u, xs, o.ts, o.common.threads);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(xs.size() * o.ts.size());
    for (std::size_t i = 0; i < o.ts.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            rows.push_back({dskg::io::format_double(xs[j]),
                            dskg::io::format_double(o.ts[i]),
                            dskg::io::format_double(grid[i][j])});
        }
    }

    Config params;
    put(params, "command", std::string("solve1d"));
    put(params, "preset", o.preset);
    put(params, "M", o.M);
    put(params, "t", o.ts);
    put(params, "nx", o.nx);
    put(params, "xmin", o.xmin);
    put(params, "xmax", o.xmax);
    put(params, "tol", o.tol);
    put(params, "seed", o.common.seed);
    Emitter em("solve1d", o.common.out, std::move(params));
    em.csv(".csv", {"x", "t", "u"}, rows);
    em.manifest();
    return 0;
}

// =====================================================================
// solve-nd
// =====================================================================

struct SolveNDOpts {
    CommonOpts common;
    std::string preset;
    int n = 0;  // 0 = preset's own dimension
    double M = 1.0;
    std::vector<double> ts = {0.5, 1.0, 2.0};
    int nr = 65;
    double rmax = std::nan("");
    double tol = 1e-8;
    CLI::Option *preset_o{}, *n_o{}, *M_o{}, *t_o{}, *nr_o{}, *rmax_o{},
        *tol_o{};
};

int run_solve_nd(SolveNDOpts& o) {
    ConfigMerge cm;
    o.common.merge(cm);
    cm.merge(o.preset_o, "preset", o.preset);
    cm.merge(o.n_o, "n", o.n);
    cm.merge(o.M_o, "M", o.M);
    cm.merge(o.t_o, "t", o.ts);
    cm.merge(o.nr_o, "nr", o.nr);
    cm.merge(o.rmax_o, "rmax", o.rmax);
    cm.merge(o.tol_o, "tol", o.tol);
    cm.finish();
    if (o.preset.empty()) {
        throw dskg::DomainError("solve-nd requires --preset");
    }

    auto pd = dskg::presets::preset_data(o.preset);
    auto* d = std::get_if<dskg::data::CauchyDataND>(&pd);
    if (d == nullptr) {
        throw dskg::DomainError("preset '" + o.preset +
                                "' is one-dimensional; use solve1d");
    }
    if (o.n != 0) {
        if (o.n != 2 && o.n != 3) {
            throw dskg::DomainError("--n must be 2 or 3");
        }
        d->n = o.n;  // descent: treat the radial data in the plane
    }
    for (double t : o.ts) {
        if (!(t >= 0.0)) throw dskg::DomainError("--t values must be >= 0");
    }
    const double radius = std::max(d->phi0_radius, d->phi1_radius);
    if (std::isnan(o.rmax)) o.rmax = radius + 1.0 + 0.5;

    const auto spec = solver_spec(o.tol);
    const dskg::kernels::CurvedMass mass(o.M);
    const auto u = d->f ? dskg::spherical::solve_source_nd(*d, mass, spec)
                        : dskg::spherical::solve_homogeneous_nd(*d, mass, spec);
    dskg::io::log(dskg::io::LogLevel::info,
                  "solve-nd preset=" + o.preset + " n=" +
                      std::to_string(d->n) + " grid " + std::to_string(o.nr) +
                      " x " + std::to_string(o.ts.size()));
    const auto rs = uniform(0.0, o.rmax, o.nr);
    std::vector<double> flat(rs.size() * o.ts.size(), 0.0);
    dskg::parallel_for(flat.size(), o.common.threads, [&](std::size_t k) {
        const std::size_t i = k / rs.size();
        const std::size_t j = k % rs.size();
        flat[k] = u({rs[j], 0.0, 0.0}, o.ts[i]);
    });

    std::vector<std::vector<std::string>> rows;
    rows.reserve(flat.size());
    for (std::size_t i = 0; i < o.ts.size(); ++i) {
        for (std::size_t j = 0; j < rs.size(); ++j) {
            rows.push_back({dskg::io::format_double(rs[j]),
                            dskg::io::format_double(o.ts[i]),
                            dskg::io::format_double(flat[i * rs.size() + j])});
        }
    }

    Config params;
    put(params, "command", std::string("solve-nd"));
    put(params, "preset", o.preset);
    put(params, "n", d->n);
    put(params, "M", o.M);
    put(params, "t", o.ts);
    put(params, "nr", o.nr);
    put(params, "rmax", o.rmax);
    put(params, "tol", o.tol);
    put(params, "seed", o.common.seed);
    Emitter em("solve-nd", o.common.out, std::move(params));
    em.csv(".csv", {"x", "t", "u"}, rows);
    em.manifest();
    return 0;
}

// =====================================================================
// oracle
// =====================================================================

struct OracleOpts {
    CommonOpts common;
    std::string preset;
    std::string solver = "spectral";
    double M = 1.0;
    std::vector<double> ts = {0.5, 1.0, 2.0, 3.0};
    double L = 8.0;
    int modes = 2048;
    double dx = 1.0 / 256.0;
    double tol = 1e-10;
    bool flat = false;
    CLI::Option *preset_o{}, *solver_o{}, *M_o{}, *t_o{}, *L_o{}, *modes_o{},
        *dx_o{}, *tol_o{}, *flat_o{};
};

int run_oracle(OracleOpts& o) {
    ConfigMerge cm;
    o.common.merge(cm);
    cm.merge(o.preset_o, "preset", o.preset);
    cm.merge(o.solver_o, "solver", o.solver);
    cm.merge(o.M_o, "M", o.M);
    cm.merge(o.t_o, "t", o.ts);
    cm.merge(o.L_o, "L", o.L);
    cm.merge(o.modes_o, "modes", o.modes);
    cm.merge(o.dx_o, "dx", o.dx);
    cm.merge(o.tol_o, "tol", o.tol);
    cm.merge(o.flat_o, "flat", o.flat);
    cm.finish();
    if (o.preset.empty()) {
        throw dskg::DomainError("oracle requires --preset");
    }

    const dskg::kernels::CurvedMass mass(o.M);
    dskg::oracle::GridSolution sol;
    if (o.solver == "spectral" || o.solver == "fd") {
        auto pd = dskg::presets::preset_data(o.preset);
        auto* d = std::get_if<dskg::data::CauchyData1D>(&pd);
        if (d == nullptr) {
            throw dskg::DomainError("the " + o.solver +
                                    " oracle needs a 1D preset");
        }
        if (o.solver == "spectral") {
            dskg::oracle::SpectralConfig cfg;
            cfg.half_length = o.L;
            cfg.modes = o.modes;
            cfg.rtol = o.tol;
            cfg.atol = 0.01 * o.tol;
            cfg.flat_speed = o.flat;
            cfg.threads = o.common.threads;
            sol = dskg::oracle::spectral_solve_1d(*d, mass, cfg, o.ts);
        } else {
            dskg::oracle::FDConfig cfg;
            cfg.half_length = o.L;
            cfg.dx = o.dx;
            sol = dskg::oracle::fd_solve_1d(*d, mass, cfg, o.ts);
        }
    } else if (o.solver == "radial3d") {
        dskg::oracle::RadialData3D rd;
        if (o.preset == "shell-3d") {
            const auto shell = dskg::presets::shell_profile();
            rd.phi1 = shell.value;
            rd.radius = shell.radius;
        } else if (o.preset == "source-pulse") {
            rd.f = dskg::presets::source_pulse();
            rd.radius = rd.f->space_radius;
        } else {
            throw dskg::DomainError(
                "the radial3d oracle supports presets shell-3d and "
                "source-pulse");
        }
        dskg::oracle::SpectralConfig cfg;
        cfg.half_length = o.L;
        cfg.modes = o.modes;
        cfg.rtol = o.tol;
        cfg.atol = 0.01 * o.tol;
        cfg.flat_speed = o.flat;
        cfg.threads = o.common.threads;
        sol = dskg::oracle::radial_reduce_3d(rd, mass, cfg, o.ts);
    } else {
        throw dskg::DomainError("--solver must be spectral, fd, or radial3d");
    }

    std::vector<std::vector<std::string>> rows;
    rows.reserve(sol.xs.size() * sol.ts.size());
    for (std::size_t i = 0; i < sol.ts.size(); ++i) {
        for (std::size_t j = 0; j < sol.xs.size(); ++j) {
            rows.push_back({dskg::io::format_double(sol.xs[j]),
                            dskg::io::format_double(sol.ts[i]),
                            dskg::io::format_double(sol.u[i][j])});
        }
    }

    Config params;
    put(params, "command", std::string("oracle"));
    put(params, "preset", o.preset);
    put(params, "solver", o.solver);
    put(params, "M", o.M);
    put(params, "t", o.ts);
    put(params, "L", o.L);
    put(params, "modes", o.modes);
    put(params, "dx", o.dx);
    put(params, "tol", o.tol);
    put(params, "flat", std::string(o.flat ? "1" : "0"));
    put(params, "seed", o.common.seed);
    Emitter em("oracle", o.common.out, std::move(params));
    em.csv(".csv", {"x", "t", "u"}, rows);
    if (em.to_files() && !sol.energy.empty()) {
        json e;
        e["t"] = sol.ts;
        e["energy"] = sol.energy;
        em.json_doc(".energy.json", e);
    }
    em.manifest();
    return 0;
}

// =====================================================================
// verify
// =====================================================================

struct VerifyOpts {
    CommonOpts common;
    std::string suite = "kernel-identities";
    double M = 0.5;
    int samples = 50;
    double fd_step = 1e-5;
    CLI::Option *suite_o{}, *M_o{}, *samples_o{}, *fd_step_o{};
};

int run_verify(VerifyOpts& o) {
    ConfigMerge cm;
    o.common.merge(cm);
    cm.merge(o.suite_o, "suite", o.suite);
    cm.merge(o.M_o, "M", o.M);
    cm.merge(o.samples_o, "samples", o.samples);
    cm.merge(o.fd_step_o, "fd-step", o.fd_step);
    cm.finish();
    if (o.suite != "kernel-identities") {
        throw dskg::DomainError("--suite must be kernel-identities");
    }

    const auto rep = dskg::kernels::verify_kernel_identities(
        dskg::kernels::CurvedMass(o.M), o.samples, o.common.seed, o.fd_step);
    for (const auto& id : rep.identities) {
        dskg::io::log(dskg::io::LogLevel::info,
                      id.name + ": max residual " +
                          dskg::io::format_double(id.max_residual) +
                          (id.pass ? " (pass)" : " (FAIL)"));
    }

    Config params;
    put(params, "command", std::string("verify"));
    put(params, "suite", o.suite);
    put(params, "M", o.M);
    put(params, "samples", o.samples);
    put(params, "fd-step", o.fd_step);
    put(params, "seed", o.common.seed);
    Emitter em("verify", o.common.out, std::move(params));
    json j = identity_report_json(rep);
    j["config_hash"] = em.hash();
    em.json_doc(".json", j);
    em.manifest();
    if (!rep.all_pass) {
        std::cerr << "dskg: identity suite failed\n";
        return 3;
    }
    return 0;
}

// =====================================================================
// decay
// =====================================================================

struct DecayOpts {
    CommonOpts common;
    std::string preset;
    double M = 1.0;
    double p = 2.0, q = 2.0, s = 0.0, rho = 1.0;
    std::vector<double> ts = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
    std::size_t grid_points = 4097;
    int stride = 8;
    double margin = 0.5;
    CLI::Option *preset_o{}, *M_o{}, *p_o{}, *q_o{}, *s_o{}, *rho_o{}, *t_o{},
        *grid_o{}, *stride_o{}, *margin_o{};
};

int run_decay(DecayOpts& o) {
    ConfigMerge cm;
    o.common.merge(cm);
    cm.merge(o.preset_o, "preset", o.preset);
    cm.merge(o.M_o, "M", o.M);
    cm.merge(o.p_o, "p", o.p);
    cm.merge(o.q_o, "q", o.q);
    cm.merge(o.s_o, "s", o.s);
    cm.merge(o.rho_o, "rho", o.rho);
    cm.merge(o.t_o, "t", o.ts);
    cm.merge(o.grid_o, "grid-points", o.grid_points);
    cm.merge(o.stride_o, "stride", o.stride);
    cm.merge(o.margin_o, "margin", o.margin);
    cm.finish();
    if (o.preset.empty()) {
        throw dskg::DomainError("decay requires --preset");
    }

    dskg::estimates::EstimateConfig cfg;
    cfg.p = o.p;
    cfg.q = o.q;
    cfg.s = o.s;
    cfg.rho = o.rho;
    cfg.times = o.ts;
    cfg.grid_points = o.grid_points;
    cfg.grid_margin = o.margin;
    cfg.eval_stride = o.stride;
    cfg.threads = o.common.threads;

    const dskg::kernels::CurvedMass mass(o.M);
    std::vector<dskg::estimates::DecayRecord> records;
    auto pd = dskg::presets::preset_data(o.preset);
    if (auto* d1 = std::get_if<dskg::data::CauchyData1D>(&pd)) {
        records = dskg::estimates::check_decay_1d(*d1, mass, cfg);
    } else {
        // The nD presets are radial; hand the profile form to the sweep.
        if (o.preset != "shell-3d") {
            throw dskg::DomainError("decay supports 1D presets and shell-3d");
        }
        const auto shell = dskg::presets::shell_profile();
        dskg::estimates::RadialDataND rd;
        rd.n = 3;
        rd.phi1 = shell.value;
        rd.dphi1 = shell.deriv;
        rd.phi1_radius = shell.radius;
        records = dskg::estimates::check_decay_nd(rd, mass, cfg);
    }
    const double c_hat = dskg::estimates::fitted_constant(records);

    Config params;
    put(params, "command", std::string("decay"));
    put(params, "preset", o.preset);
    put(params, "M", o.M);
    put(params, "p", o.p);
    put(params, "q", o.q);
    put(params, "s", o.s);
    put(params, "rho", o.rho);
    put(params, "t", o.ts);
    put(params, "grid-points", static_cast<int>(o.grid_points));
    put(params, "stride", o.stride);
    put(params, "margin", o.margin);
    put(params, "seed", o.common.seed);
    Emitter em("decay", o.common.out, std::move(params));

    std::vector<std::vector<std::string>> rows;
    json jrecords = json::array();
    for (const auto& r : records) {
        rows.push_back({dskg::io::format_double(r.t),
                        dskg::io::format_double(r.lhs_norm),
                        dskg::io::format_double(r.envelope),
                        dskg::io::format_double(r.ratio), em.hash()});
        jrecords.push_back({{"t", r.t},
                            {"lhs", r.lhs_norm},
                            {"envelope", r.envelope},
                            {"ratio", r.ratio}});
    }
    json summary;
    summary["command"] = "decay";
    summary["preset"] = o.preset;
    summary["config_hash"] = em.hash();
    summary["fitted_constant"] = c_hat;
    summary["records"] = jrecords;
    if (em.to_files()) {
        em.csv(".csv", {"t_or_z", "lhs", "envelope", "ratio", "config-hash"},
               rows);
    }
    em.json_doc(".json", summary);
    em.manifest();
    return 0;
}

// =====================================================================
// lemmas
// =====================================================================

struct LemmasOpts {
    CommonOpts common;
    double rho = 1.0;
    double exponent = 0.0;
    double M = 1.0;
    std::vector<double> zs = {2.0, 5.0, 10.0, 25.0, 50.0, 75.0, 100.0};
    CLI::Option *rho_o{}, *exponent_o{}, *M_o{}, *z_o{};
};

int run_lemmas(LemmasOpts& o) {
    ConfigMerge cm;
    o.common.merge(cm);
    cm.merge(o.rho_o, "rho", o.rho);
    cm.merge(o.exponent_o, "exponent", o.exponent);
    cm.merge(o.M_o, "M", o.M);
    cm.merge(o.z_o, "z", o.zs);
    cm.finish();

    const auto rep =
        dskg::estimates::lemma_bound_checks(o.rho, o.zs, o.exponent, o.M);

    Config params;
    put(params, "command", std::string("lemmas"));
    put(params, "rho", o.rho);
    put(params, "exponent", o.exponent);
    put(params, "M", o.M);
    put(params, "z", o.zs);
    put(params, "seed", o.common.seed);
    Emitter em("lemmas", o.common.out, std::move(params));

    json jsweeps = json::array();
    bool all_within = true;
    for (const auto& s : rep.sweeps) {
        if (em.to_files()) {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < s.zs.size(); ++i) {
                rows.push_back({dskg::io::format_double(s.zs[i]),
                                dskg::io::format_double(s.lhs[i]),
                                dskg::io::format_double(s.rhs[i]),
                                dskg::io::format_double(s.ratio[i]),
                                em.hash()});
            }
            em.csv("-" + s.name + ".csv",
                   {"t_or_z", "lhs", "envelope", "ratio", "config-hash"},
                   rows);
        }
        jsweeps.push_back({{"name", s.name},
                           {"fitted_constant", s.c_hat},
                           {"max_exceedance", s.max_exceedance},
                           {"within_tolerance", s.within_tolerance}});
        all_within = all_within && s.within_tolerance;
    }
    json summary;
    summary["command"] = "lemmas";
    summary["rho"] = o.rho;
    summary["exponent"] = o.exponent;
    summary["M"] = o.M;
    summary["config_hash"] = em.hash();
    summary["sweeps"] = jsweeps;
    em.json_doc(".json", summary);
    em.manifest();
    if (!all_within) {
        std::cerr << "dskg: an integral bound exceeded its fitted constant "
                     "by more than 5%\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dskg: closed-form fundamental solutions and Cauchy-problem "
        "representations of the Klein-Gordon equation on a de Sitter "
        "background, with oracle cross-checks and decay measurements"};
    app.set_version_flag("--version", DSKG_VERSION);
    app.require_subcommand(1);

    KernelOpts k;
    auto* kernel =
        app.add_subcommand("kernel", "Evaluate E(x,t;x0,t0), K0, or K1");
    k.common.attach(kernel);
    k.kind_o = kernel->add_option("--kind", k.kind, "E, K0, or K1");
    k.M_o = kernel->add_option("--M", k.M, "Curved mass parameter");
    k.x_o = kernel->add_option("--x", k.x, "Field point x (kind E)");
    k.t_o = kernel->add_option("--t", k.t, "Field time t");
    k.x0_o = kernel->add_option("--x0", k.x0, "Source point x0 (kind E)");
    k.t0_o = kernel->add_option("--t0", k.t0, "Source time t0 (kind E)");
    k.z_o = kernel->add_option("--z", k.z, "Kernel argument z (kinds K0/K1)");
    k.tol_o = kernel->add_option("--tol", k.tol, "Series tolerance");

    Solve1DOpts s1;
    auto* solve1d = app.add_subcommand(
        "solve1d", "Solve the 1D Cauchy problem for a preset on a grid");
    s1.common.attach(solve1d);
    s1.preset_o = solve1d->add_option("--preset", s1.preset,
                                      "bump-phi0 | bump-phi1 | source-pulse "
                                      "| mode-cos");
    s1.M_o = solve1d->add_option("--M", s1.M, "Curved mass parameter");
    s1.t_o = solve1d->add_option("--t", s1.ts, "Output times")
                 ->delimiter(',');
    s1.nx_o = solve1d->add_option("--nx", s1.nx, "Grid points");
    s1.xmin_o = solve1d->add_option("--xmin", s1.xmin, "Grid start");
    s1.xmax_o = solve1d->add_option("--xmax", s1.xmax, "Grid end");
    s1.tol_o = solve1d->add_option("--tol", s1.tol,
                                   "Relative quadrature tolerance");

    SolveNDOpts snd;
    auto* solvend = app.add_subcommand(
        "solve-nd", "Solve the radial nD Cauchy problem for a preset");
    snd.common.attach(solvend);
    snd.preset_o = solvend->add_option("--preset", snd.preset, "shell-3d");
    snd.n_o = solvend->add_option(
        "--n", snd.n, "Space dimension 2 or 3 (default: the preset's own)");
    snd.M_o = solvend->add_option("--M", snd.M, "Curved mass parameter");
    snd.t_o = solvend->add_option("--t", snd.ts, "Output times")
                  ->delimiter(',');
    snd.nr_o = solvend->add_option("--nr", snd.nr, "Radial grid points");
    snd.rmax_o = solvend->add_option("--rmax", snd.rmax, "Radial grid end");
    snd.tol_o = solvend->add_option("--tol", snd.tol,
                                    "Relative quadrature tolerance");

    OracleOpts ora;
    auto* oracle = app.add_subcommand(
        "oracle", "Run an independent reference solver on a preset");
    ora.common.attach(oracle);
    ora.preset_o = oracle->add_option("--preset", ora.preset, "Preset name");
    ora.solver_o =
        oracle->add_option("--solver", ora.solver, "spectral | fd | radial3d");
    ora.M_o = oracle->add_option("--M", ora.M, "Curved mass parameter");
    ora.t_o = oracle->add_option("--t", ora.ts, "Output times")
                  ->delimiter(',');
    ora.L_o = oracle->add_option("--L", ora.L, "Periodic half-length");
    ora.modes_o = oracle->add_option("--modes", ora.modes,
                                     "Fourier modes (power of two)");
    ora.dx_o = oracle->add_option("--dx", ora.dx, "FD grid spacing");
    ora.tol_o = oracle->add_option("--tol", ora.tol,
                                   "Time-integrator relative tolerance");
    ora.flat_o = oracle->add_flag("--flat", ora.flat,
                                  "Use flat-space speed 1 instead of e^(-t)");

    VerifyOpts ver;
    auto* verify = app.add_subcommand(
        "verify", "Run a randomized verification suite and report JSON");
    ver.common.attach(verify);
    ver.suite_o =
        verify->add_option("--suite", ver.suite, "kernel-identities");
    ver.M_o = verify->add_option("--M", ver.M, "Curved mass parameter");
    ver.samples_o =
        verify->add_option("--samples", ver.samples, "Samples per identity");
    ver.fd_step_o = verify->add_option("--fd-step", ver.fd_step,
                                       "Finite-difference step");

    DecayOpts dec;
    auto* decay = app.add_subcommand(
        "decay", "Measure Lq decay of a preset against its envelope");
    dec.common.attach(decay);
    dec.preset_o = decay->add_option("--preset", dec.preset, "Preset name");
    dec.M_o = decay->add_option("--M", dec.M, "Curved mass parameter");
    dec.p_o = decay->add_option("--p", dec.p, "Data exponent p");
    dec.q_o = decay->add_option("--q", dec.q, "Solution exponent q");
    dec.s_o = decay->add_option("--s", dec.s, "Smoothing index (must be 0)");
    dec.rho_o = decay->add_option("--rho", dec.rho, "Auxiliary exponent rho");
    dec.t_o = decay->add_option("--t", dec.ts, "Sample times")
                  ->delimiter(',');
    dec.grid_o = decay->add_option("--grid-points", dec.grid_points,
                                   "Norm-grid points (>= 4096)");
    dec.stride_o = decay->add_option(
        "--stride", dec.stride,
        "Solver evaluation stride (must divide grid-points - 1)");
    dec.margin_o = decay->add_option("--margin", dec.margin, "Grid margin");

    LemmasOpts lem;
    auto* lemmas = app.add_subcommand(
        "lemmas", "Sweep the kernel-profile integral bounds over z");
    lem.common.attach(lemmas);
    lem.rho_o = lemmas->add_option("--rho", lem.rho, "Exponent rho in [1,2)");
    lem.exponent_o = lemmas->add_option(
        "--exponent", lem.exponent, "Moment exponent in (-1, 0]");
    lem.M_o = lemmas->add_option("--M", lem.M, "Curved mass parameter");
    lem.z_o = lemmas->add_option("--z", lem.zs, "z grid in (1, 100]")
                  ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(kernel)) return run_kernel(k);
        if (app.got_subcommand(solve1d)) return run_solve1d(s1);
        if (app.got_subcommand(solvend)) return run_solve_nd(snd);
        if (app.got_subcommand(oracle)) return run_oracle(ora);
        if (app.got_subcommand(verify)) return run_verify(ver);
        if (app.got_subcommand(decay)) return run_decay(dec);
        if (app.got_subcommand(lemmas)) return run_lemmas(lem);
        std::cerr << "dskg: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dskg: invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dskg: numerical failure: " << e.what() << '\n';
        return 3;
    }
}
