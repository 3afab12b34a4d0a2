// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: runs figure sweeps / custom sweeps and echoes
// resolved configurations.  Exit codes: 0 success, 2 configuration
// error, 3 numerical failure, 4 I/O failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdsim/experiment.hpp"
#include "qdsim/qd.hpp"
#include "qdsim/quadrature.hpp"
#include "qdsim/specfn.hpp"

namespace {

// Flag state shared by the `run` and `validate` subcommands.
struct CliOptions {
  std::string experiment;
  std::string config_file;
  std::vector<std::string> sets;
  std::string out_dir;
  uint64_t seed = 0;
  uint64_t samples = 0;
  bool no_plots = false;
  int workers = 0;
  std::string backend;

  CLI::Option* config_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* backend_opt = nullptr;
};

void add_common_options(CLI::App* sub, CliOptions& opt) {
  sub->add_option("experiment", opt.experiment,
                  "Preset name: fig2..fig7 or custom")
      ->required();
  opt.config_opt = sub->add_option(
      "--config", opt.config_file,
      "Config file with one 'key = value' per line ('#' comments)");
  sub->add_option("--set", opt.sets,
                  "Override one config key, e.g. --set k_db=0,5,10 "
                  "(repeatable)");
  opt.out_opt = sub->add_option("--out", opt.out_dir, "Output directory");
  opt.seed_opt = sub->add_option("--seed", opt.seed, "Base RNG seed");
  opt.samples_opt = sub->add_option("--samples", opt.samples,
                                    "Monte-Carlo trials per sweep point");
  sub->add_flag("--no-plots", opt.no_plots, "Skip SVG chart output");
  opt.workers_opt =
      sub->add_option("--workers", opt.workers,
                      "Worker threads for sweep points (0 = all cores)");
  opt.backend_opt = sub->add_option(
      "--backend", opt.backend, "Kernel backend: auto, scalar or avx2");
}

// Resolution order: preset defaults, then config file, then --set
// overrides, then direct flags.
qdsim::ExperimentConfig build_config(const CliOptions& opt) {
  qdsim::ExperimentConfig cfg = qdsim::preset_config(opt.experiment);
  if (opt.config_opt->count() > 0) {
    qdsim::load_config_file(cfg, opt.config_file);
  }
  for (const std::string& kv : opt.sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw qdsim::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    qdsim::apply_key_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (opt.out_opt->count() > 0) cfg.out_dir = opt.out_dir;
  if (opt.seed_opt->count() > 0) cfg.seed = opt.seed;
  if (opt.samples_opt->count() > 0) cfg.n_samples = opt.samples;
  if (opt.no_plots) cfg.plots = false;
  if (opt.workers_opt->count() > 0) cfg.workers = opt.workers;
  if (opt.backend_opt->count() > 0) {
    qdsim::apply_key_value(cfg, "backend", opt.backend);
  }
  qdsim::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user quasi-degradation probability sweeps"};
  app.require_subcommand(1);

  CliOptions run_opt;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run a sweep and write CSV/SVG outputs");
  add_common_options(run_cmd, run_opt);

  CliOptions validate_opt;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Echo the resolved config and precondition warnings");
  add_common_options(validate_cmd, validate_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Help/version requests exit 0; anything else is a config error.
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      const qdsim::ExperimentConfig cfg = build_config(run_opt);
      const qdsim::RunArtifacts artifacts = qdsim::run_experiment(cfg);
      for (const std::string& path : artifacts.csv_paths) {
        std::cout << "wrote " << path << "\n";
      }
      for (const std::string& path : artifacts.svg_paths) {
        std::cout << "wrote " << path << "\n";
      }
    } else {
      const qdsim::ExperimentConfig cfg = build_config(validate_opt);
      const qdsim::ValidationReport report = qdsim::describe_config(cfg);
      std::cout << report.text;
    }
  } catch (const qdsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qdsim::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const qdsim::QuadratureBudgetError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const qdsim::SeriesDivergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const qdsim::SeriesConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
