// SPDX-License-Identifier: Apache-2.0

#include "qdsim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "qdsim/kernels.hpp"
#include "qdsim/mc.hpp"
#include "qdsim/qd.hpp"
#include "qdsim/quadform.hpp"
#include "qdsim/rng.hpp"
#include "qdsim/svg.hpp"

namespace qdsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double deg) { return deg * kPi / 180.0; }
double db2lin(double db) { return std::pow(10.0, db / 10.0); }

const std::vector<std::string> kExperiments = {
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "custom"};

bool is_metric_experiment(const std::string& experiment) {
  return experiment == "fig4" || experiment == "fig5" ||
         experiment == "fig6" || experiment == "fig7";
}

std::string trim(const std::string& s) {
  const size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, delim)) parts.push_back(trim(item));
  return parts;
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError("invalid value for '" + key + "': '" + value + "'");
  }
  return x;
}

uint64_t parse_uint(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || v[0] == '-' || end != v.c_str() + v.size()) {
    throw ConfigError("invalid value for '" + key + "': '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError("invalid value for '" + key + "': '" + value + "'");
  }
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid value for '" + key + "': '" + value +
                    "' (expected a boolean)");
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  for (const std::string& part : split(value, ',')) {
    if (part.empty()) continue;
    out.push_back(parse_double(key, part));
  }
  if (out.empty()) {
    throw ConfigError("invalid value for '" + key + "': '" + value +
                      "' (expected a comma-separated number list)");
  }
  return out;
}

}  // namespace

ExperimentConfig preset_config(const std::string& experiment) {
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) ==
      kExperiments.end()) {
    throw ConfigError("unknown experiment '" + experiment +
                      "' (expected fig2..fig7 or custom)");
  }
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.k_db = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
  cfg.theta_delta_deg = {10.0};
  cfg.beta_delta = {5.0, 25.0};
  if (experiment == "fig3") {
    cfg.beta_delta = {100.0};
    cfg.theta_delta_deg = {5.0, 10.0};
  } else if (experiment == "fig4") {
    cfg.k_db = {10.0};
    cfg.beta_delta = {1.0, 2.0, 5.0, 10.0, 25.0, 50.0, 100.0};
  } else if (experiment == "fig5") {
    cfg.beta_delta = {1.0};
  } else if (experiment == "fig6" || experiment == "fig7") {
    cfg.beta_delta = {25.0, 100.0};
    cfg.theta_delta_deg = {5.0, 10.0};
  }
  return cfg;
}

void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value) {
  const std::string k = trim(key);
  if (k == "k_db") {
    cfg.k_db = parse_double_list(k, value);
  } else if (k == "beta_delta") {
    cfg.beta_delta = parse_double_list(k, value);
  } else if (k == "theta_delta_deg") {
    cfg.theta_delta_deg = parse_double_list(k, value);
  } else if (k == "theta1_deg") {
    cfg.theta1_deg = parse_double(k, value);
  } else if (k == "n_antennas") {
    cfg.n_antennas = parse_int(k, value);
  } else if (k == "rates") {
    const std::vector<double> r = parse_double_list(k, value);
    if (r.size() != 2) {
      throw ConfigError("invalid value for 'rates': expected two "
                        "comma-separated values");
    }
    cfg.rate_i = r[0];
    cfg.rate_j = r[1];
  } else if (k == "n_samples") {
    cfg.n_samples = parse_uint(k, value);
  } else if (k == "seed") {
    cfg.seed = parse_uint(k, value);
  } else if (k == "out_dir") {
    cfg.out_dir = trim(value);
  } else if (k == "methods") {
    cfg.run_quadrature = false;
    cfg.run_series = false;
    cfg.run_mc = false;
    for (const std::string& m : split(value, ',')) {
      if (m == "quadrature") {
        cfg.run_quadrature = true;
      } else if (m == "series") {
        cfg.run_series = true;
      } else if (m == "mc") {
        cfg.run_mc = true;
      } else if (!m.empty()) {
        throw ConfigError("invalid value for 'methods': unknown method '" +
                          m + "'");
      }
    }
    if (!cfg.run_quadrature && !cfg.run_series && !cfg.run_mc) {
      throw ConfigError("invalid value for 'methods': at least one of "
                        "quadrature, series, mc required");
    }
  } else if (k == "plots") {
    cfg.plots = parse_bool(k, value);
  } else if (k == "workers") {
    cfg.workers = parse_int(k, value);
  } else if (k == "backend") {
    const std::string v = trim(value);
    if (v != "auto" && v != "scalar" && v != "avx2") {
      throw ConfigError("invalid value for 'backend': '" + v +
                        "' (expected auto, scalar or avx2)");
    }
    cfg.backend = v;
  } else {
    throw ConfigError("unknown configuration key: '" + k + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file: " + path);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected 'key = value'";
      throw ConfigError(os.str());
    }
    try {
      apply_key_value(cfg, stripped.substr(0, eq), stripped.substr(eq + 1));
    } catch (const ConfigError& e) {
      std::ostringstream os;
      os << path << ":" << lineno << ": " << e.what();
      throw ConfigError(os.str());
    }
  }
}

void validate(const ExperimentConfig& cfg) {
  if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) ==
      kExperiments.end()) {
    throw ConfigError("unknown experiment '" + cfg.experiment +
                      "' (expected fig2..fig7 or custom)");
  }
  if (cfg.k_db.empty()) throw ConfigError("k_db: grid must be nonempty");
  if (cfg.beta_delta.empty()) {
    throw ConfigError("beta_delta: grid must be nonempty");
  }
  if (cfg.theta_delta_deg.empty()) {
    throw ConfigError("theta_delta_deg: grid must be nonempty");
  }
  for (double b : cfg.beta_delta) {
    if (!(b > 0.0)) {
      throw ConfigError("beta_delta: values must be positive");
    }
  }
  if (cfg.n_antennas < 2) {
    throw ConfigError("n_antennas: must be at least 2");
  }
  if (!(cfg.rate_i > 0.0) || !(cfg.rate_j > 0.0)) {
    throw ConfigError("rates: must be positive");
  }
  if (cfg.n_samples < 1000) {
    throw ConfigError("n_samples: must be at least 1000");
  }
  if (!(cfg.theta1_deg > -90.0 && cfg.theta1_deg <= 90.0)) {
    throw ConfigError("theta1_deg: must lie in (-90, 90]");
  }
  for (double d : cfg.theta_delta_deg) {
    const double theta2 = cfg.theta1_deg + d;
    if (!(theta2 > -90.0 && theta2 <= 90.0)) {
      std::ostringstream os;
      os << "theta_delta_deg: theta1 + delta = " << theta2
         << " leaves (-90, 90]";
      throw ConfigError(os.str());
    }
  }
  if (cfg.backend != "auto" && cfg.backend != "scalar" &&
      cfg.backend != "avx2") {
    throw ConfigError("backend: must be one of auto, scalar, avx2");
  }
  if (!cfg.run_quadrature && !cfg.run_series && !cfg.run_mc) {
    throw ConfigError("methods: at least one of quadrature, series, mc "
                      "required");
  }
}

namespace {

// The two-user scenario a sweep point describes: user i at theta1 with
// gain beta_delta, user j at theta1 + theta_delta with unit gain, equal
// Rician factors.
QdScenario make_scenario(const ExperimentConfig& cfg, double k_db,
                         double beta_delta, double theta_delta_deg) {
  QdScenario s;
  const double k = db2lin(k_db);
  s.user_i = {beta_delta, k, deg2rad(cfg.theta1_deg), cfg.n_antennas};
  s.user_j = {1.0, k, deg2rad(cfg.theta1_deg + theta_delta_deg),
              cfg.n_antennas};
  s.rate_i = cfg.rate_i;
  s.rate_j = cfg.rate_j;
  return s;
}

std::vector<std::string> metrics_for(const std::string& experiment) {
  if (experiment == "fig4") return {"power_mean", "power_var"};
  if (experiment == "fig5") return {"outer_trace", "projector_trace"};
  if (experiment == "fig6") return {"quadform_mean"};
  if (experiment == "fig7") return {"quadform_var"};
  return {};
}

struct RowSpec {
  double k_db = 0.0;
  double beta_delta = 1.0;
  double theta_delta_deg = 10.0;
  std::string metric;  // empty for probability rows
};

struct RowResult {
  double analytic_quadrature = std::nan("");
  double analytic_series = std::nan("");
  double mc_value = std::nan("");
  double mc_std_error = std::nan("");
  double runtime_ms = 0.0;
};

std::vector<RowSpec> build_rows(const ExperimentConfig& cfg) {
  std::vector<RowSpec> rows;
  std::vector<std::string> metrics = metrics_for(cfg.experiment);
  if (metrics.empty()) metrics.emplace_back();  // one untagged pass
  for (const std::string& metric : metrics) {
    for (double beta : cfg.beta_delta) {
      for (double theta_d : cfg.theta_delta_deg) {
        for (double k : cfg.k_db) {
          rows.push_back({k, beta, theta_d, metric});
        }
      }
    }
  }
  return rows;
}

RowResult compute_row(const ExperimentConfig& cfg, const RowSpec& row,
                      uint64_t row_seed) {
  const auto start = std::chrono::steady_clock::now();
  RowResult out;
  const QdScenario sc =
      make_scenario(cfg, row.k_db, row.beta_delta, row.theta_delta_deg);

  if (row.metric.empty()) {
    if (cfg.run_quadrature) {
      out.analytic_quadrature = qd_prob_quadrature(sc).probability;
    }
    if (cfg.run_series) {
      try {
        out.analytic_series = qd_prob_series(sc).probability;
      } catch (const SeriesDivergenceError&) {
        // Divergent series reported as missing; the quadrature column is
        // the route of record.
      }
    }
    if (cfg.run_mc) {
      const McEstimate est =
          estimate_qd_prob(sc, cfg.n_samples, row_seed, /*workers=*/1);
      out.mc_value = est.value;
      out.mc_std_error = est.std_error;
    }
  } else if (row.metric == "power_mean" || row.metric == "power_var") {
    const bool mean = row.metric == "power_mean";
    if (cfg.run_quadrature || cfg.run_series) {
      const GammaSurrogate sur = power_surrogate(sc.user_i);
      out.analytic_quadrature = mean ? sur.mean() : sur.variance();
    }
    if (cfg.run_mc) {
      const McMoments mm =
          empirical_power_moments(sc.user_i, cfg.n_samples, row_seed, 1);
      const McEstimate est = mean ? mm.mean : mm.variance;
      out.mc_value = est.value;
      out.mc_std_error = est.std_error;
    }
  } else if (row.metric == "outer_trace" ||
             row.metric == "projector_trace") {
    const bool outer = row.metric == "outer_trace";
    if (cfg.run_quadrature || cfg.run_series) {
      out.analytic_quadrature = outer
                                    ? expected_outer(sc.user_j).trace()
                                    : expected_projector(sc.user_j).trace();
    }
    if (cfg.run_mc) {
      const TraceEstimates est =
          empirical_projector_trace(sc.user_j, cfg.n_samples, row_seed);
      const McEstimate& pick = outer ? est.outer : est.projector;
      out.mc_value = pick.value;
      out.mc_std_error = pick.std_error;
    }
  } else if (row.metric == "quadform_mean" || row.metric == "quadform_var") {
    const bool mean = row.metric == "quadform_mean";
    if (cfg.run_quadrature || cfg.run_series) {
      const GammaSurrogate sur =
          projected_power_surrogate(sc.user_i, sc.user_j);
      out.analytic_quadrature = mean ? sur.mean() : sur.variance();
    }
    if (cfg.run_mc) {
      const McMoments mm =
          empirical_quadform_moments(sc, cfg.n_samples, row_seed, 1);
      const McEstimate est = mean ? mm.mean : mm.variance;
      out.mc_value = est.value;
      out.mc_std_error = est.std_error;
    }
  } else {
    throw ConfigError("unknown metric '" + row.metric + "'");
  }

  const auto stop = std::chrono::steady_clock::now();
  out.runtime_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return out;
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

ValidationReport describe_config(const ExperimentConfig& cfg) {
  validate(cfg);
  std::ostringstream os;
  os << "experiment: " << cfg.experiment << "\n";
  os << "k_db grid:";
  for (double k : cfg.k_db) {
    os << " " << fmt9(k) << " dB (K=" << fmt9(db2lin(k)) << ")";
  }
  os << "\n";
  os << "beta_delta grid:";
  for (double b : cfg.beta_delta) os << " " << fmt9(b);
  os << "\n";
  os << "theta_delta grid:";
  for (double d : cfg.theta_delta_deg) {
    os << " " << fmt9(d) << " deg (" << fmt9(deg2rad(d)) << " rad)";
  }
  os << "\n";
  os << "theta1: " << fmt9(cfg.theta1_deg) << " deg ("
     << fmt9(deg2rad(cfg.theta1_deg)) << " rad)\n";
  os << "n_antennas: " << cfg.n_antennas << "\n";
  os << "rates: r_i=" << fmt9(cfg.rate_i) << " r_j=" << fmt9(cfg.rate_j)
     << "\n";
  os << "n_samples: " << cfg.n_samples << "\n";
  os << "seed: " << cfg.seed << "\n";
  os << "out_dir: " << cfg.out_dir << "\n";
  os << "methods:";
  if (cfg.run_quadrature) os << " quadrature";
  if (cfg.run_series) os << " series";
  if (cfg.run_mc) os << " mc";
  os << "\n";
  os << "workers: " << cfg.workers << "\n";
  os << "backend: " << cfg.backend << "\n";

  ValidationReport report;
  for (double b : cfg.beta_delta) {
    if (b < 1.0) {
      std::ostringstream w;
      w << "beta_delta " << fmt9(b)
        << " < 1: decoding user i first assumes beta_i >= beta_j";
      report.warnings.push_back(w.str());
    }
  }
  // The power-surrogate shape is gain-independent; probe it per (N, K).
  for (double k_db : cfg.k_db) {
    const ChannelParams probe{1.0, db2lin(k_db), deg2rad(cfg.theta1_deg),
                              cfg.n_antennas};
    const GammaSurrogate sur = power_surrogate(probe);
    if (sur.shape <= 2.0) {
      std::ostringstream w;
      w << "power-surrogate shape " << fmt9(sur.shape) << " <= 2 at K="
        << fmt9(k_db)
        << " dB: inverse-gamma moments unreliable at this point";
      report.warnings.push_back(w.str());
    }
  }
  for (const std::string& w : report.warnings) {
    os << "warning: " << w << "\n";
  }
  report.text = os.str();
  return report;
}

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  try {
    if (cfg.backend == "scalar") {
      kernels::set_backend(kernels::Backend::kScalar);
    } else if (cfg.backend == "avx2") {
      kernels::set_backend(kernels::Backend::kAvx2);
    } else {
      kernels::set_backend(kernels::Backend::kAuto);
    }
  } catch (const std::runtime_error& e) {
    throw ConfigError(std::string("backend: ") + e.what());
  }

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + cfg.out_dir +
                  "': " + ec.message());
  }

  const std::vector<RowSpec> rows = build_rows(cfg);
  std::vector<RowResult> results(rows.size());

  // Row-level pool; rows are pure functions of (config, row index), and
  // the write pass below runs in row order, so the pool size cannot
  // change any output byte.
  const int pool = std::max(
      1, std::min<int>(static_cast<int>(rows.size()),
                       cfg.workers > 0
                           ? cfg.workers
                           : static_cast<int>(std::max(
                                 1u, std::thread::hardware_concurrency()))));
  std::vector<std::exception_ptr> errors(pool);
  auto work = [&](int tid) {
    for (size_t r = tid; r < rows.size(); r += pool) {
      results[r] = compute_row(cfg, rows[r], derive_row_seed(cfg.seed, r));
    }
  };
  if (pool <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (int tid = 0; tid < pool; ++tid) {
      threads.emplace_back([&, tid] {
        try {
          work(tid);
        } catch (...) {
          errors[tid] = std::current_exception();
        }
      });
    }
    for (std::thread& th : threads) th.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const bool with_metric = is_metric_experiment(cfg.experiment);
  const std::string csv_path =
      (std::filesystem::path(cfg.out_dir) / (cfg.experiment + ".csv"))
          .string();
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw IoError("cannot open output file: " + csv_path);
    csv << "k_db,beta_delta,theta_delta_deg,"
        << (with_metric ? "metric," : "")
        << "analytic_quadrature,analytic_series,mc_value,mc_std_error\n";
    for (size_t r = 0; r < rows.size(); ++r) {
      csv << fmt9(rows[r].k_db) << "," << fmt9(rows[r].beta_delta) << ","
          << fmt9(rows[r].theta_delta_deg) << ",";
      if (with_metric) csv << rows[r].metric << ",";
      csv << fmt9(results[r].analytic_quadrature) << ","
          << fmt9(results[r].analytic_series) << ","
          << fmt9(results[r].mc_value) << ","
          << fmt9(results[r].mc_std_error) << "\n";
    }
    csv.flush();
    if (!csv.good()) throw IoError("write failed: " + csv_path);
  }

  // Wall-clock timings are inherently run-dependent, so they live in a
  // sidecar file and the main CSV stays byte-stable.
  const std::string timing_path =
      (std::filesystem::path(cfg.out_dir) /
       (cfg.experiment + "_timing.csv"))
          .string();
  {
    std::ofstream timing(timing_path, std::ios::binary);
    if (!timing) throw IoError("cannot open output file: " + timing_path);
    timing << "row_index,runtime_ms\n";
    for (size_t r = 0; r < rows.size(); ++r) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%zu,%.3f\n", r,
                    results[r].runtime_ms);
      timing << buf;
    }
    timing.flush();
    if (!timing.good()) throw IoError("write failed: " + timing_path);
  }

  RunArtifacts artifacts;
  artifacts.csv_paths = {csv_path, timing_path};

  if (cfg.plots) {
    ChartSpec chart;
    chart.title = cfg.experiment;
    const bool sweep_beta = cfg.experiment == "fig4";
    chart.x_label = sweep_beta ? "beta_delta" : "K (dB)";
    chart.y_label = with_metric ? "value" : "QD probability";

    // One analytic and one empirical polyline per sweep line.  Lines are
    // keyed by the non-swept coordinates so fig4's beta sweep and the
    // K sweeps both come out as connected curves.
    struct Group {
      std::string label;
      ChartSeries analytic;
      ChartSeries mc;
    };
    std::vector<Group> groups;
    for (size_t r = 0; r < rows.size(); ++r) {
      std::ostringstream label;
      if (!rows[r].metric.empty()) label << rows[r].metric << " ";
      if (sweep_beta) {
        label << "K=" << fmt9(rows[r].k_db)
              << "dB theta_d=" << fmt9(rows[r].theta_delta_deg);
      } else {
        label << "beta=" << fmt9(rows[r].beta_delta)
              << " theta_d=" << fmt9(rows[r].theta_delta_deg);
      }
      Group* group = nullptr;
      for (Group& g : groups) {
        if (g.label == label.str()) {
          group = &g;
          break;
        }
      }
      if (group == nullptr) {
        groups.push_back({label.str(), {}, {}});
        group = &groups.back();
        group->analytic.label = group->label + " (analytic)";
        group->mc.label = group->label + " (mc)";
        group->mc.dashed = true;
      }
      const double x = sweep_beta ? rows[r].beta_delta : rows[r].k_db;
      group->analytic.x.push_back(x);
      group->analytic.y.push_back(results[r].analytic_quadrature);
      group->mc.x.push_back(x);
      group->mc.y.push_back(results[r].mc_value);
    }
    for (Group& g : groups) {
      if (cfg.run_quadrature || cfg.run_series) {
        chart.series.push_back(std::move(g.analytic));
      }
      if (cfg.run_mc) chart.series.push_back(std::move(g.mc));
    }

    const std::string svg_path =
        (std::filesystem::path(cfg.out_dir) / (cfg.experiment + ".svg"))
            .string();
    write_line_chart(svg_path, chart);
    artifacts.svg_paths.push_back(svg_path);
  }

  return artifacts;
}

}  // namespace qdsim
