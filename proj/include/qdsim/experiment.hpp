// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: named sweep presets plus a fully configurable
// custom sweep, flat key-value configuration with file and command-line
// overrides, CSV emission with a deterministic byte-level format, a
// timing sidecar (kept out of the main CSV so results are byte-identical
// across runs and worker counts), and optional SVG charts.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdsim {

// Configuration / usage errors; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures (unreadable config, unwritable output).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  std::string experiment = "custom";   // fig2..fig7 or custom
  std::vector<double> k_db;            // Rician factor grid, dB
  std::vector<double> beta_delta;      // gain ratios beta_i / beta_j
  std::vector<double> theta_delta_deg; // angle separations, degrees
  double theta1_deg = 30.0;
  int n_antennas = 4;
  double rate_i = 1.0;
  double rate_j = 1.0;
  uint64_t n_samples = 100000;
  uint64_t seed = 1;
  std::string out_dir = ".";
  bool run_quadrature = true;
  bool run_series = true;
  bool run_mc = true;
  bool plots = true;
  int workers = 0;                     // row-level pool; <=0 = hardware
  std::string backend = "auto";        // auto | scalar | avx2
};

// Preset for a named experiment (defaults mirror the reference
// parameter table: theta1 = 30 deg, N = 4, unit rates, K swept 0..10 dB).
ExperimentConfig preset_config(const std::string& experiment);

// Apply one `key = value` override.  Throws ConfigError naming the key
// for unknown keys or unparseable values.
void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value);

// Parse a flat key-value file (one `key = value` per line, `#` comments)
// and apply every pair.  Throws IoError if unreadable, ConfigError on
// parse failures (message includes the line number).
void load_config_file(ExperimentConfig& cfg, const std::string& path);

// Structural validation (nonempty grids, n_samples >= 1000, parameter
// domains).  Throws ConfigError naming the offending key.
void validate(const ExperimentConfig& cfg);

// Human-readable resolved-config report: effective grids with dB->linear
// and degree->radian conversions shown, plus warnings (decode-order
// precondition when beta_delta < 1; unreliable inverse-gamma moments
// when a power-surrogate shape is <= 2).
struct ValidationReport {
  std::string text;
  std::vector<std::string> warnings;
};
ValidationReport describe_config(const ExperimentConfig& cfg);

struct RunArtifacts {
  std::vector<std::string> csv_paths;
  std::vector<std::string> svg_paths;
};

// Run the sweep: one CSV (plus `<name>_timing.csv` sidecar) per
// experiment, optional SVG chart.  Rows are computed by a worker pool
// but written in sweep order; every numeric cell is a pure function of
// (config, seed), so the main CSV is byte-stable.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

}  // namespace qdsim
