#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bo/evolution.hpp"
#include "bo/field.hpp"
#include "bo/spacetime.hpp"

namespace bo {

inline constexpr char kVersion[] = "0.1.0";

enum class ExperimentKind { evolve, gauge_check, norms, strichartz, picard, illposed };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind(const std::string& name);

// One experiment, fully determined by a flat key = value config file.
// Defaults below are the parse-time defaults; which keys a given kind
// accepts or requires is printed by describe_text.  Unknown, duplicate,
// malformed, or out-of-range keys raise ConfigError naming the key.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::evolve;
    double lambda = 1.0;
    int m = 256;
    std::uint64_t seed = 0;
    std::filesystem::path output;  // empty = the experiment kind name
    SolverConfig solver;

    std::string u0;           // trig-sum source (evolve, norms, picard)
    double t_end = 1.0;       // key T
    int store_every = 0;      // evolve frame stride, 0 = aim for ~32 frames
    int count = 50;           // gauge-check field count
    int band = 0;             // gauge-check band limit, 0 = M / 8
    double b = 0.5;           // norms: modulation exponent
    double s = 0.0;           // norms / picard: regularity exponent
    Window window = Window::smooth;
    int n_t = 64;             // strichartz window length
    double t_window = 4.0;    // strichartz synthesis span
    int sample_count = 500;   // strichartz
    int order_k = 3;          // picard truncation order, key K
    double eps = 1e-3;        // picard data amplitude
    double sweep_s = -0.5;    // illposed, key s
    double sweep_t = 0.5;     // illposed, key t
    std::vector<int> n_list;  // illposed, comma-separated key n_list

    // sorted "key=value" lines of the parsed file; hashed into the manifest
    std::string canonical;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& file);

// Initial-condition mini-language: a finite trig sum such as
//   0.1*cos(x) - 0.5*sin(3*x) + cos(2*x)
// Each term places its coefficient pair exactly into the spectral band, so
// the result is mean-free by construction.  The trig argument k in cos(k*x)
// is a frequency: k * lambda must land on an integer harmonic inside the
// band, else ConfigError.
RealField trig_sum(const std::string& source, const Grid& grid);

// FNV-1a over the canonical key=value form.
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Output directory: cfg.output (or the kind name when empty), prefixed by
// $BOSPEC_OUTPUT_ROOT when that is set and nonempty.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg);

// Run one experiment and emit its artifacts under the resolved output
// directory.  Returns the process exit code: 0 on success, 3 when the
// solver raises BlowupError.  Once execution reaches the compute stage a
// manifest.json (config hash, versions, wall time, status) is written on
// both paths.  Progress notes go to diag.
int run_experiment(const ExperimentConfig& cfg, std::ostream& diag);

// Schema text for one experiment kind: accepted keys, defaults, emitted
// files, and the identity each output column reports on.  Unknown kinds
// raise ConfigError.
std::string describe_text(const std::string& kind);

}  // namespace bo
