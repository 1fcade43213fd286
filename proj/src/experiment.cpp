#include "bo/experiment.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bo/errors.hpp"
#include "bo/gauge.hpp"
#include "bo/picard.hpp"
#include "bo/rng.hpp"
#include "bo/spectral.hpp"

namespace bo {

namespace {

std::string trim(std::string v) {
    const auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!v.empty() && sp(v.front())) v.erase(v.begin());
    while (!v.empty() && sp(v.back())) v.pop_back();
    return v;
}

// One accepted config key: name, whether the kind requires it, schema line.
struct KeyDoc {
    const char* key;
    bool required;
    const char* doc;
};

constexpr KeyDoc kCommon[] = {
    {"experiment", true,
     "one of evolve, gauge-check, norms, strichartz, picard, illposed"},
    {"output", false,
     "output directory (default = the experiment name); "
     "$BOSPEC_OUTPUT_ROOT prefixes it when set"},
    {"seed", false,
     "nonnegative integer recorded in the manifest and seeding the "
     "samplers where one is used (default 0)"},
};

constexpr KeyDoc kGrid[] = {
    {"lambda", false, "circle radius, period 2*pi*lambda (number >= 1, default 1)"},
    {"M", false, "spatial grid size (power of two >= 8, default 256)"},
};

constexpr KeyDoc kSolver[] = {
    {"dt", false, "solver time step (number > 0, default 1e-3)"},
    {"dealias_fraction", false,
     "band fraction kept when forming the quadratic term (in (0, 1], default 2/3)"},
    {"blowup_threshold", false,
     "sup-norm guard; crossing it ends the run with exit code 3 "
     "(number > 0, default 1e6)"},
};

constexpr KeyDoc kEvolveKeys[] = {
    {"u0", true,
     "initial condition, finite trig sum like \"0.1*cos(x) + 0.2*sin(2*x)\""},
    {"T", true, "final time (number > 0)"},
    {"store_every", false,
     "trajectory frame stride (integer >= 0, default 0 = about 32 frames)"},
};

constexpr KeyDoc kGaugeKeys[] = {
    {"count", false, "number of random fields (integer >= 1, default 50)"},
    {"band", false,
     "band limit of the sampled fields (integer in [1, M/2 - 1], default M/8)"},
};

constexpr KeyDoc kNormsKeys[] = {
    {"u0", true, "initial condition, finite trig sum"},
    {"T", false, "final time of the underlying run (number > 0, default 1)"},
    {"window", false, "taper of the analysis window: smooth or boxcar (default smooth)"},
    {"b", false, "modulation exponent (|b| <= 2, default 0.5)"},
    {"s", false, "regularity exponent (|s| <= 2, default 0)"},
};

constexpr KeyDoc kStrichartzKeys[] = {
    {"samples", false, "number of random wave packets (integer >= 1, default 500)"},
    {"n_t", false, "time samples per window (power of two >= 8, default 64)"},
    {"t_window", false, "time span of one window (number > 0, default 4)"},
    {"window", false, "taper of the analysis window: smooth or boxcar (default smooth)"},
};

constexpr KeyDoc kPicardKeys[] = {
    {"u0", true, "data profile, finite trig sum; the run uses eps * u0"},
    {"eps", false, "data amplitude (number >= 0, default 1e-3)"},
    {"K", false, "series truncation order (integer in [1, 12], default 3)"},
    {"T", false, "final time (number >= 0, default 1)"},
    {"quadrature_order", false,
     "Gauss-Legendre nodes per integration panel (integer in [2, 16], default 4)"},
    {"s", false, "Sobolev exponent of the reported error (|s| <= 2, default 0)"},
};

constexpr KeyDoc kIllposedKeys[] = {
    {"s", false, "Sobolev exponent of the sweep (number <= 0, default -0.5)"},
    {"t", false, "evaluation time (number > 0, default 0.5)"},
    {"n_list", true, "comma-separated frequencies, e.g. 8,16,32 (integers >= 1)"},
};

std::vector<KeyDoc> keys_for(ExperimentKind k) {
    std::vector<KeyDoc> v(std::begin(kCommon), std::end(kCommon));
    const auto add = [&](const auto& arr) {
        v.insert(v.end(), std::begin(arr), std::end(arr));
    };
    switch (k) {
        case ExperimentKind::evolve:
            add(kGrid);
            add(kEvolveKeys);
            add(kSolver);
            break;
        case ExperimentKind::gauge_check:
            add(kGrid);
            add(kGaugeKeys);
            break;
        case ExperimentKind::norms:
            add(kGrid);
            add(kNormsKeys);
            add(kSolver);
            break;
        case ExperimentKind::strichartz:
            add(kGrid);
            add(kStrichartzKeys);
            break;
        case ExperimentKind::picard:
            add(kGrid);
            add(kPicardKeys);
            add(kSolver);
            break;
        case ExperimentKind::illposed:
            // the sweep picks its own grid, so no grid or solver keys
            add(kIllposedKeys);
            break;
    }
    return v;
}

// Typed access to the raw key -> value map; every failure names the key.
class Reader {
  public:
    explicit Reader(const std::map<std::string, std::string>& kv) : kv_(kv) {}

    bool has(const char* key) const { return kv_.count(key) != 0; }
    const std::string& raw(const char* key) const { return kv_.at(key); }

    double num(const char* key, double dflt) const {
        if (!has(key)) return dflt;
        const std::string& v = kv_.at(key);
        try {
            std::size_t used = 0;
            const double x = std::stod(v, &used);
            if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument("");
            return x;
        } catch (...) {
            throw ConfigError(std::string("config: key '") + key +
                              "': expected a finite number, got '" + v + "'");
        }
    }

    long integer(const char* key, long dflt, long lo, long hi) const {
        long v = dflt;
        if (has(key)) {
            const std::string& raw_v = kv_.at(key);
            try {
                std::size_t used = 0;
                v = std::stol(raw_v, &used);
                if (used != raw_v.size()) throw std::invalid_argument("");
            } catch (...) {
                throw ConfigError(std::string("config: key '") + key +
                                  "': expected an integer, got '" + raw_v + "'");
            }
        }
        if (v < lo || v > hi)
            throw ConfigError(std::string("config: key '") + key + "': must be in [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }

    std::uint64_t uinteger(const char* key, std::uint64_t dflt) const {
        if (!has(key)) return dflt;
        const std::string& v = kv_.at(key);
        try {
            if (v.empty() || v[0] == '-') throw std::invalid_argument("");
            std::size_t used = 0;
            const unsigned long long x = std::stoull(v, &used);
            if (used != v.size()) throw std::invalid_argument("");
            return x;
        } catch (...) {
            throw ConfigError(std::string("config: key '") + key +
                              "': expected a nonnegative integer, got '" + v + "'");
        }
    }

  private:
    const std::map<std::string, std::string>& kv_;
};

Window parse_window(const std::string& v) {
    if (v == "smooth") return Window::smooth;
    if (v == "boxcar") return Window::boxcar;
    throw ConfigError("config: key 'window': expected smooth or boxcar, got '" + v + "'");
}

std::vector<int> parse_n_list(const std::string& v) {
    std::vector<int> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        long n = 0;
        try {
            if (item.empty()) throw std::invalid_argument("");
            std::size_t used = 0;
            n = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument("");
        } catch (...) {
            throw ConfigError("config: key 'n_list': expected comma-separated integers, got '" +
                              v + "'");
        }
        if (n < 1 || n > 1000000)
            throw ConfigError("config: key 'n_list': entries must be in [1, 1000000]");
        out.push_back(static_cast<int>(n));
    }
    if (out.empty()) throw ConfigError("config: key 'n_list': no entries");
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// LF line endings and 17 significant digits keep reruns byte-identical.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& file, std::initializer_list<const char*> cols)
        : out_(file, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open " + file.string());
        bool first = true;
        for (const char* c : cols) {
            if (!first) out_ << ',';
            out_ << c;
            first = false;
        }
        out_ << '\n';
    }

    void row(std::initializer_list<double> vals) {
        bool first = true;
        for (double v : vals) {
            if (!first) out_ << ',';
            out_ << fmt(v);
            first = false;
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

void write_json(const std::filesystem::path& file, const nlohmann::ordered_json& j) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + file.string());
    out << j.dump(2) << '\n';
}

void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                    const char* status, double wall_seconds,
                    const std::vector<std::string>& files) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    nlohmann::ordered_json j;
    j["experiment"] = to_string(cfg.kind);
    j["config_hash"] = hex;
    j["seed"] = cfg.seed;
    nlohmann::ordered_json versions;
    versions["bospec"] = kVersion;
    versions["fftw"] = std::string(fftw_version);
    versions["compiler"] = __VERSION__;
    j["versions"] = versions;
    j["status"] = status;
    j["wall_time_seconds"] = wall_seconds;
    j["files"] = files;
    write_json(dir / "manifest.json", j);
}

void run_evolve(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                std::vector<std::string>& files, std::ostream& diag) {
    const Grid grid(cfg.lambda, cfg.m);
    const auto [v0, mean] = reduce_mean(trig_sum(cfg.u0, grid));
    const Trajectory tr = reconstruct(evolve(v0, cfg.t_end, cfg.solver), mean);

    const int stride =
        cfg.store_every > 0 ? cfg.store_every : std::max(1, (tr.size() - 1 + 31) / 32);
    CsvWriter traj(dir / "trajectory.csv", {"t", "x", "u"});
    int frames = 0;
    const auto frame = [&](int n) {
        const RealField u = to_physical(tr.states[n]);
        for (int j = 0; j < grid.size(); ++j) traj.row({tr.time(n), grid.x(j), u[j]});
        ++frames;
    };
    int last = -1;
    for (int n = 0; n < tr.size(); n += stride) {
        frame(n);
        last = n;
    }
    if (last != tr.size() - 1) frame(tr.size() - 1);
    files.push_back("trajectory.csv");

    CsvWriter mon(dir / "monitor.csv",
                  {"t", "mean", "momentum", "energy_plus", "energy_minus"});
    for (const MonitorRow& r : monitor_series(tr))
        mon.row({r.t, r.mean, r.momentum, r.energy_plus, r.energy_minus});
    files.push_back("monitor.csv");

    diag << "evolve: " << tr.size() << " states, " << frames << " stored frames\n";
}

void run_gauge_check(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                     std::vector<std::string>& files, std::ostream& diag) {
    const Grid grid(cfg.lambda, cfg.m);
    CsvWriter out(dir / "residuals.csv",
                  {"field_id", "negative_mode", "high_mode", "roundtrip"});
    double worst = 0.0;
    for (int i = 0; i < cfg.count; ++i) {
        const RealField u = random_band_limited(grid, cfg.band, cfg.seed, i);
        const RealField back = invert_gauge(make_gauge(u));
        const double neg = check_negative_mode_identity(u);
        const double high = check_highmode_inversion(u);
        const double rt = sobolev_norm(to_spectral(back) - to_spectral(u), 0.0);
        out.row({static_cast<double>(i), neg, high, rt});
        worst = std::max({worst, neg, high, rt});
    }
    files.push_back("residuals.csv");
    diag << "gauge-check: " << cfg.count << " fields, worst residual " << fmt(worst)
         << "\n";
}

void run_norms(const ExperimentConfig& cfg, const std::filesystem::path& dir,
               std::vector<std::string>& files, std::ostream& diag) {
    const Grid grid(cfg.lambda, cfg.m);
    const auto [v0, mean] = reduce_mean(trig_sum(cfg.u0, grid));
    const Trajectory tr = reconstruct(evolve(v0, cfg.t_end, cfg.solver), mean);
    const SpaceTimeSpectrum spec = st_transform(tr, TaperSpec{cfg.window});
    const NormReport rep = norm_report(spec, cfg.b, cfg.s);

    nlohmann::ordered_json j;
    j["b"] = rep.b;
    j["s"] = rep.s;
    j["window"] = cfg.window == Window::smooth ? "smooth" : "boxcar";
    j["n_t"] = spec.n_t();
    j["dt"] = spec.dt();
    nlohmann::ordered_json vals;
    for (const auto& [name, value] : rep.values) vals[name] = value;
    j["values"] = vals;
    write_json(dir / "norms.json", j);
    files.push_back("norms.json");

    diag << "norms: window of " << spec.n_t() << " states at dt " << fmt(spec.dt())
         << "\n";
}

void run_strichartz(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                    std::vector<std::string>& files, std::ostream& diag) {
    const Grid grid(cfg.lambda, cfg.m);
    const StrichartzReport rep = strichartz_ratio(cfg.sample_count, cfg.seed, grid,
                                                  cfg.n_t, TaperSpec{cfg.window},
                                                  cfg.t_window);
    CsvWriter csv(dir / "strichartz.csv", {"sample_id", "ratio"});
    for (std::size_t i = 0; i < rep.ratio.size(); ++i)
        csv.row({static_cast<double>(i), rep.ratio[i]});
    files.push_back("strichartz.csv");

    nlohmann::ordered_json j;
    j["samples"] = cfg.sample_count;
    j["seed"] = cfg.seed;
    j["max_ratio"] = rep.max_ratio();
    j["median"] = rep.quantile(0.5);
    j["q90"] = rep.quantile(0.9);
    j["q99"] = rep.quantile(0.99);
    write_json(dir / "summary.json", j);
    files.push_back("summary.json");

    diag << "strichartz: " << cfg.sample_count << " samples, max ratio "
         << fmt(rep.max_ratio()) << "\n";
}

void run_picard(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                std::vector<std::string>& files, std::ostream& diag) {
    const Grid grid(cfg.lambda, cfg.m);
    const RealField phi = trig_sum(cfg.u0, grid);
    const ResidualSeries series =
        series_vs_solver(phi, cfg.eps, cfg.order_k, cfg.t_end, cfg.solver, cfg.s);
    CsvWriter csv(dir / "series.csv", {"t", "error"});
    for (std::size_t i = 0; i < series.t.size(); ++i)
        csv.row({series.t[i], series.value[i]});
    files.push_back("series.csv");
    diag << "picard: truncation error " << fmt(series.max_value()) << " at order "
         << cfg.order_k << "\n";
}

void run_illposed(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                  std::vector<std::string>& files, std::ostream& diag) {
    const std::vector<IllposedRow> rows =
        illposed_sweep(cfg.sweep_s, cfg.sweep_t, cfg.n_list);
    CsvWriter csv(dir / "illposed.csv", {"N", "norm_psi", "norm_a3", "ratio", "eps_n"});
    for (const IllposedRow& r : rows)
        csv.row({static_cast<double>(r.n), r.norm_psi, r.norm_a3, r.ratio, r.eps_n});
    files.push_back("illposed.csv");
    diag << "illposed: " << rows.size() << " frequencies swept\n";
}

const char* purpose(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::evolve:
            return "integrate u_t + H u_xx = u u_x from a trig-sum initial condition "
                   "and record the solution and its conserved quantities";
        case ExperimentKind::gauge_check:
            return "evaluate the gauge-transform inversion identities on random "
                   "band-limited mean-free fields";
        case ExperimentKind::norms:
            return "run the flow, window it in time, and report the space-time "
                   "norm family of the windowed spectrum";
        case ExperimentKind::strichartz:
            return "sample the L4 space-time to X^{3/8,0} ratio of random free "
                   "wave packets";
        case ExperimentKind::picard:
            return "compare the truncated Picard series against the solver run "
                   "from the same small data";
        case ExperimentKind::illposed:
            return "sweep the third Picard iterate through high frequencies at "
                   "nonpositive Sobolev regularity (the grid is chosen internally)";
    }
    return "";
}

const char* outputs_doc(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::evolve:
            return R"(outputs
  trajectory.csv  (t, x, u)
      solution samples of u_t + H u_xx - u u_x = 0 on the stored frames;
      H is the Hilbert transform on the circle of radius lambda
  monitor.csv     (t, mean, momentum, energy_plus, energy_minus)
      mean = average of u, momentum = (1/2) integral u^2,
      energy_pm = (1/2) integral |D^{1/2} u|^2 pm (1/6) integral u^3;
      the flow conserves mean, momentum, and energy_minus, while
      energy_plus is the deliberately non-conserved control
  manifest.json)";
        case ExperimentKind::gauge_check:
            return R"(outputs
  residuals.csv  (field_id, negative_mode, high_mode, roundtrip)
      for each sampled field u, with F its mean-free primitive and
      w = d/dx P_+(e^{-iF/2}):
      negative_mode  L2 defect of P_- u = -2i P_-(e^{-iF/2} conj(w))
                     - 2i P_-(e^{-iF/2} d/dx P_+(e^{iF/2}))
      high_mode      L2 defect of P_{>1} u = 2i P_{>1}(e^{iF/2} w)
                     + 2i P_{>1}(P_{>1}(e^{iF/2}) d/dx P_-(e^{-iF/2}))
      roundtrip      L2 distance between u and the full gauge inversion
                     u = 2i e^{iF/2} w + 2i e^{iF/2} d/dx P_-(e^{-iF/2})
  manifest.json)";
        case ExperimentKind::norms:
            return R"(outputs
  norms.json
      space-time norms of the solution spectrum on the leading
      power-of-two time window, tapered per 'window'; here
      sigma = tau + xi|xi| and <.> = (1 + .^2)^{1/2}:
      X        l2 of the <sigma>^b <xi>^s weighted coefficients
      Xdot     |sigma|^b variant (the sigma = 0 plane contributes zero)
      Z        l2 in xi of the l1 in tau of the same weights
      A        l1 over the whole lattice of the <sigma>^b weights
      Y        X at (1/2, s) plus Z at (0, s)
      L4tilde  square-summed dyadic-block L4 norms
      L4       plain space-time Lebesgue L4 of the windowed solution
      N        Z(0,0) + X(7/8,-1) above frequency 3 + L4tilde
      Ms       Y(s) + X(1,-1) above frequency 1
  manifest.json)";
        case ExperimentKind::strichartz:
            return R"(outputs
  strichartz.csv  (sample_id, ratio)
      ratio = L4 space-time norm over X^{3/8,0} norm of one random free
      wave packet: unit Gaussian coefficients on the lower quarter of
      both bands, evolved by the free group, windowed and tapered;
      uniform boundedness of this column across samples and resolutions
      is the probed estimate
  summary.json    sample count, max ratio, median, upper quantiles
  manifest.json)";
        case ExperimentKind::picard:
            return R"(outputs
  series.csv  (t, error)
      error = || u_eps(t) - sum_{k=1..K} eps^k A_k(t) ||_{H^s} on the
      solver lattice, where u_eps solves u_t + H u_xx = u u_x from
      eps * u0 and the iterates obey
      A_1 = e^{-t d/dx |d/dx|} u0,
      A_k = (1/2) sum_{k1+k2=k} int_0^t e^{-(t-s) d/dx |d/dx|}
                                        d/dx (A_{k1} A_{k2}) ds;
      the column shrinks like eps^{K+1} on bounded time spans
  manifest.json)";
        case ExperimentKind::illposed:
            return R"(outputs
  illposed.csv  (N, norm_psi, norm_a3, ratio, eps_n)
      for psi_N = N^{-s} cos(N x) on the unit circle:
      norm_psi  H^s norm of psi_N
      norm_a3   H^s norm of the third Picard iterate A_3(t, psi_N)
      ratio     norm_a3 / (t N^{-2s} norm_psi^3); staying bounded away
                from zero across the sweep exhibits the t N^{-2s}
                growth that defeats smooth data-to-solution maps at
                negative regularity
      eps_n     admissible amplitude min(1/2, t/4, (t N^s / 4)^{1/4})
  manifest.json)";
    }
    return "";
}

constexpr const char* kEpilogue = R"(invocation
  bospec run <config>       run the experiment described by the config file
  bospec describe <kind>    print this schema

exit codes
  0  success
  2  config error (the diagnostic names the offending key)
  3  numerical failure (the sup-norm guard tripped)

conventions
  Configs are flat "key = value" lines; '#' starts a comment.
  Every run that reaches its computation writes manifest.json holding the
  FNV-1a hash of the sorted key=value pairs, component versions, wall time,
  and final status, on success and failure alike.
  CSV floats carry 17 significant digits; rerunning a config with the same
  seed reproduces every CSV byte for byte.
)";

}  // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::evolve: return "evolve";
        case ExperimentKind::gauge_check: return "gauge-check";
        case ExperimentKind::norms: return "norms";
        case ExperimentKind::strichartz: return "strichartz";
        case ExperimentKind::picard: return "picard";
        case ExperimentKind::illposed: return "illposed";
    }
    return "";
}

ExperimentKind experiment_kind(const std::string& name) {
    if (name == "evolve") return ExperimentKind::evolve;
    if (name == "gauge-check") return ExperimentKind::gauge_check;
    if (name == "norms") return ExperimentKind::norms;
    if (name == "strichartz") return ExperimentKind::strichartz;
    if (name == "picard") return ExperimentKind::picard;
    if (name == "illposed") return ExperimentKind::illposed;
    throw ConfigError("unknown experiment kind '" + name +
                      "'; expected evolve, gauge-check, norms, strichartz, picard, "
                      "or illposed");
}

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
        if (value.empty()) throw ConfigError("config: key '" + key + "': empty value");
        if (!kv.emplace(std::move(key), std::move(value)).second)
            throw ConfigError("config: duplicate key '" + line.substr(0, eq) + "'");
    }

    const auto kind_it = kv.find("experiment");
    if (kind_it == kv.end())
        throw ConfigError("config: missing required key 'experiment'");

    ExperimentConfig cfg;
    cfg.kind = experiment_kind(kind_it->second);

    const std::vector<KeyDoc> schema = keys_for(cfg.kind);
    for (const auto& [k, v] : kv)
        if (std::none_of(schema.begin(), schema.end(),
                         [&](const KeyDoc& d) { return k == d.key; }))
            throw ConfigError("config: unknown key '" + k + "' for experiment '" +
                              to_string(cfg.kind) + "'");
    for (const KeyDoc& d : schema)
        if (d.required && kv.count(d.key) == 0)
            throw ConfigError("config: missing required key '" + std::string(d.key) +
                              "'");

    const Reader r(kv);
    if (r.has("output")) cfg.output = r.raw("output");
    cfg.seed = r.uinteger("seed", 0);

    cfg.lambda = r.num("lambda", 1.0);
    if (!(cfg.lambda >= 1.0)) throw ConfigError("config: key 'lambda': must be >= 1");
    cfg.m = static_cast<int>(r.integer("M", 256, 8, 1 << 24));
    if ((cfg.m & (cfg.m - 1)) != 0)
        throw ConfigError("config: key 'M': must be a power of two >= 8");

    cfg.solver.dt = r.num("dt", cfg.solver.dt);
    if (!(cfg.solver.dt > 0.0)) throw ConfigError("config: key 'dt': must be > 0");
    cfg.solver.dealias_fraction =
        r.num("dealias_fraction", cfg.solver.dealias_fraction);
    if (!(cfg.solver.dealias_fraction > 0.0 && cfg.solver.dealias_fraction <= 1.0))
        throw ConfigError("config: key 'dealias_fraction': must be in (0, 1]");
    cfg.solver.blowup_threshold =
        r.num("blowup_threshold", cfg.solver.blowup_threshold);
    if (!(cfg.solver.blowup_threshold > 0.0))
        throw ConfigError("config: key 'blowup_threshold': must be > 0");
    cfg.solver.quadrature_order =
        static_cast<int>(r.integer("quadrature_order", 4, 2, 16));

    switch (cfg.kind) {
        case ExperimentKind::evolve:
            cfg.u0 = r.raw("u0");
            cfg.t_end = r.num("T", 1.0);
            if (!(cfg.t_end > 0.0)) throw ConfigError("config: key 'T': must be > 0");
            cfg.store_every = static_cast<int>(r.integer("store_every", 0, 0, 1 << 30));
            break;
        case ExperimentKind::gauge_check:
            cfg.count = static_cast<int>(r.integer("count", 50, 1, 1000000));
            cfg.band = static_cast<int>(r.integer("band", cfg.m / 8, 1, cfg.m / 2 - 1));
            break;
        case ExperimentKind::norms:
            cfg.u0 = r.raw("u0");
            cfg.t_end = r.num("T", 1.0);
            if (!(cfg.t_end > 0.0)) throw ConfigError("config: key 'T': must be > 0");
            if (r.has("window")) cfg.window = parse_window(r.raw("window"));
            cfg.b = r.num("b", 0.5);
            if (std::abs(cfg.b) > 2.0)
                throw ConfigError("config: key 'b': magnitude must be <= 2");
            cfg.s = r.num("s", 0.0);
            if (std::abs(cfg.s) > 2.0)
                throw ConfigError("config: key 's': magnitude must be <= 2");
            break;
        case ExperimentKind::strichartz:
            cfg.sample_count = static_cast<int>(r.integer("samples", 500, 1, 10000000));
            cfg.n_t = static_cast<int>(r.integer("n_t", 64, 8, 1 << 22));
            if ((cfg.n_t & (cfg.n_t - 1)) != 0)
                throw ConfigError("config: key 'n_t': must be a power of two >= 8");
            cfg.t_window = r.num("t_window", 4.0);
            if (!(cfg.t_window > 0.0))
                throw ConfigError("config: key 't_window': must be > 0");
            if (r.has("window")) cfg.window = parse_window(r.raw("window"));
            break;
        case ExperimentKind::picard:
            cfg.u0 = r.raw("u0");
            cfg.eps = r.num("eps", 1e-3);
            if (!(cfg.eps >= 0.0)) throw ConfigError("config: key 'eps': must be >= 0");
            cfg.order_k = static_cast<int>(r.integer("K", 3, 1, 12));
            cfg.t_end = r.num("T", 1.0);
            if (!(cfg.t_end >= 0.0)) throw ConfigError("config: key 'T': must be >= 0");
            cfg.s = r.num("s", 0.0);
            if (std::abs(cfg.s) > 2.0)
                throw ConfigError("config: key 's': magnitude must be <= 2");
            break;
        case ExperimentKind::illposed:
            cfg.sweep_s = r.num("s", -0.5);
            if (!(cfg.sweep_s <= 0.0))
                throw ConfigError("config: key 's': must be <= 0");
            cfg.sweep_t = r.num("t", 0.5);
            if (!(cfg.sweep_t > 0.0)) throw ConfigError("config: key 't': must be > 0");
            cfg.n_list = parse_n_list(r.raw("n_list"));
            break;
    }

    // surface u0 syntax errors at parse time, before any artifact is touched
    if (!cfg.u0.empty()) (void)trig_sum(cfg.u0, Grid(cfg.lambda, cfg.m));

    for (const auto& [k, v] : kv) {
        cfg.canonical += k;
        cfg.canonical += '=';
        cfg.canonical += v;
        cfg.canonical += '\n';
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("config: cannot read '" + file.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

RealField trig_sum(const std::string& source, const Grid& grid) {
    SpectralField f(grid);
    std::size_t p = 0;
    const auto fail = [&](const std::string& msg) {
        throw ConfigError("u0: " + msg + " at position " + std::to_string(p) +
                          " in \"" + source + "\"");
    };
    const auto ws = [&] {
        while (p < source.size() && std::isspace(static_cast<unsigned char>(source[p])))
            ++p;
    };
    const auto starts_number = [&] {
        return p < source.size() &&
               (std::isdigit(static_cast<unsigned char>(source[p])) ||
                source[p] == '.');
    };
    const auto number = [&]() -> double {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(source.substr(p), &used);
        } catch (...) {
            fail("expected a number");
        }
        p += used;
        return v;
    };

    ws();
    if (p == source.size()) fail("empty expression");
    bool first = true;
    while (true) {
        ws();
        double sign = 1.0;
        if (p < source.size() && (source[p] == '+' || source[p] == '-')) {
            sign = source[p] == '-' ? -1.0 : 1.0;
            ++p;
            ws();
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }

        double amp = 1.0;
        if (starts_number()) {
            amp = number();
            ws();
            if (p >= source.size() || source[p] != '*')
                fail("expected '*' after the coefficient");
            ++p;
            ws();
        }

        double phase = 0.0;
        if (source.compare(p, 3, "cos") == 0) {
            phase = 0.0;
            p += 3;
        } else if (source.compare(p, 3, "sin") == 0) {
            phase = -0.5 * kPi;
            p += 3;
        } else {
            fail("expected cos(...) or sin(...)");
        }
        ws();
        if (p >= source.size() || source[p] != '(') fail("expected '('");
        ++p;
        ws();
        double freq = 1.0;
        if (starts_number()) {
            freq = number();
            ws();
            if (p >= source.size() || source[p] != '*')
                fail("expected '*' between the frequency and x");
            ++p;
            ws();
        }
        if (p >= source.size() || source[p] != 'x') fail("expected 'x'");
        ++p;
        ws();
        if (p >= source.size() || source[p] != ')') fail("expected ')'");
        ++p;

        const double n_exact = freq * grid.lambda();
        const long n = std::lround(n_exact);
        if (std::abs(n_exact - static_cast<double>(n)) > 1e-9)
            fail("frequency " + std::to_string(freq) +
                 " does not land on a harmonic of the circle");
        if (n < 1) fail("frequency must be positive");
        if (n > grid.size() / 2 - 1)
            fail("frequency " + std::to_string(freq) + " exceeds the spectral band");

        // coefficient of amp * cos(n x / lambda + phase): amp pi lambda e^{i phase}
        const cplx c = (sign * amp) * kPi * grid.lambda() * std::polar(1.0, phase);
        f.coeffs()[n] += c;
        f.coeffs()[static_cast<std::size_t>(grid.size()) - n] += std::conj(c);

        first = false;
        ws();
        if (p == source.size()) break;
    }
    return to_physical(f);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : cfg.canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg) {
    const std::filesystem::path out =
        cfg.output.empty() ? std::filesystem::path(to_string(cfg.kind)) : cfg.output;
    if (const char* root = std::getenv("BOSPEC_OUTPUT_ROOT"); root && *root)
        return std::filesystem::path(root) / out;
    return out;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& diag) {
    const std::filesystem::path dir = resolve_output_dir(cfg);
    std::filesystem::create_directories(dir);
    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    };
    std::vector<std::string> files;
    try {
        switch (cfg.kind) {
            case ExperimentKind::evolve: run_evolve(cfg, dir, files, diag); break;
            case ExperimentKind::gauge_check:
                run_gauge_check(cfg, dir, files, diag);
                break;
            case ExperimentKind::norms: run_norms(cfg, dir, files, diag); break;
            case ExperimentKind::strichartz:
                run_strichartz(cfg, dir, files, diag);
                break;
            case ExperimentKind::picard: run_picard(cfg, dir, files, diag); break;
            case ExperimentKind::illposed: run_illposed(cfg, dir, files, diag); break;
        }
    } catch (const BlowupError& e) {
        diag << "numerical failure: " << e.what() << "\n";
        write_manifest(dir, cfg, "numerical_failure", elapsed(), files);
        return 3;
    }
    write_manifest(dir, cfg, "ok", elapsed(), files);
    diag << "artifacts in " << dir.string() << "\n";
    return 0;
}

std::string describe_text(const std::string& kind) {
    const ExperimentKind k = experiment_kind(kind);
    std::ostringstream out;
    out << "experiment: " << to_string(k) << "\n  " << purpose(k) << "\n\n";
    out << "config keys (* = required)\n";
    for (const KeyDoc& d : keys_for(k)) {
        std::string name = d.key;
        if (d.required) name += '*';
        out << "  " << name;
        for (std::size_t i = name.size(); i < 18; ++i) out << ' ';
        out << d.doc << "\n";
    }
    out << "\n" << outputs_doc(k) << "\n\n" << kEpilogue;
    return out.str();
}

}  // namespace bo
