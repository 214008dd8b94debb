// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT
//
// Command-line front end: normalizing constants, gradients, maximum
// likelihood fitting, rejection sampling, fixture verification, and a
// scaling benchmark. Every command prints exactly one JSON run report to
// stdout; progress and warnings go to stderr.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include "fbnorm/errors.hpp"
#include "fbnorm/euler_quad.hpp"
#include "fbnorm/mle.hpp"
#include "fbnorm/normconst.hpp"
#include "fbnorm/oracles.hpp"
#include "fbnorm/params.hpp"
#include "fbnorm/rng.hpp"
#include "fbnorm/sampler.hpp"
#include "fbnorm/version.hpp"

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

json to_json(const std::vector<double>& v) { return json(v); }

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

void print_report(const std::string& command, json inputs, json outputs,
                  double timing_ms) {
  json report{{"schema_version", fbnorm::kSchemaVersion},
              {"tool_version", fbnorm::kVersion},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"outputs", std::move(outputs)},
              {"timing_ms", timing_ms}};
  std::cout << report.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Parameter files

struct LoadedParams {
  fbnorm::CanonicalParams canonical;
  std::optional<Eigen::MatrixXd> frame;  // set when input was mu/sigma
  json echo;
};

std::vector<double> require_number_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw fbnorm::ConfigError(std::string("parameter file needs a \"") + key +
                              "\" array");
  }
  std::vector<double> out;
  out.reserve(doc[key].size());
  for (const auto& x : doc[key]) {
    if (!x.is_number()) {
      throw fbnorm::ConfigError(std::string("\"") + key +
                                "\" must contain only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

LoadedParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw fbnorm::ConfigError("cannot open parameter file: " + path);
  }
  json doc = json::parse(in);  // json::exception maps to a usage error

  LoadedParams lp;
  lp.echo = doc;
  if (doc.contains("theta")) {
    lp.canonical.theta = require_number_array(doc, "theta");
    if (doc.contains("gamma")) {
      lp.canonical.gamma = require_number_array(doc, "gamma");
    } else {
      lp.canonical.gamma.assign(lp.canonical.theta.size(), 0.0);
    }
    fbnorm::validate_params(lp.canonical);
    return lp;
  }
  if (doc.contains("mu") && doc.contains("sigma")) {
    fbnorm::FullParams full;
    std::vector<double> mu = require_number_array(doc, "mu");
    full.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(),
                                                static_cast<long>(mu.size()));
    if (!doc["sigma"].is_array() || doc["sigma"].empty()) {
      throw fbnorm::ConfigError("\"sigma\" must be a non-empty array of rows");
    }
    const std::size_t p = doc["sigma"].size();
    full.sigma.resize(static_cast<long>(p), static_cast<long>(p));
    for (std::size_t r = 0; r < p; ++r) {
      const auto& row = doc["sigma"][r];
      if (!row.is_array() || row.size() != p) {
        throw fbnorm::ConfigError("\"sigma\" must be a square matrix");
      }
      for (std::size_t c = 0; c < p; ++c) {
        if (!row[c].is_number()) {
          throw fbnorm::ConfigError("\"sigma\" must contain only numbers");
        }
        full.sigma(static_cast<long>(r), static_cast<long>(c)) =
            row[c].get<double>();
      }
    }
    fbnorm::FrameDecomposition dec = fbnorm::from_mean_covariance(full);
    lp.canonical = std::move(dec.canonical);
    lp.frame = std::move(dec.orthogonal);
    return lp;
  }
  throw fbnorm::ConfigError(
      "parameter file must contain either {\"theta\", \"gamma\"} or "
      "{\"mu\", \"sigma\"}");
}

// ---------------------------------------------------------------------------
// CSV

bool parse_double(const std::string& field, double& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc()) return false;
  while (ptr != last && (*ptr == ' ' || *ptr == '\t' || *ptr == '\r')) ++ptr;
  return ptr == last;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw fbnorm::ConfigError("cannot open data file: " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    bool ok = true;
    while (std::getline(ss, field, ',')) {
      double x = 0.0;
      if (!parse_double(field, x)) {
        ok = false;
        break;
      }
      row.push_back(x);
    }
    if (!ok) {
      // A single non-numeric first line is treated as a header.
      if (!header_checked && rows.empty()) {
        header_checked = true;
        continue;
      }
      throw fbnorm::DataError("non-numeric field on line " +
                              std::to_string(lineno) + " of " + path);
    }
    header_checked = true;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw fbnorm::DataError(
          "line " + std::to_string(lineno) + " has " +
          std::to_string(row.size()) + " fields, expected " +
          std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw fbnorm::DataError("no data rows in " + path);
  }
  Eigen::MatrixXd X(static_cast<long>(rows.size()),
                    static_cast<long>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      X(static_cast<long>(r), static_cast<long>(c)) = rows[r][c];
    }
  }
  return X;
}

// Writes via a temp file and rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw fbnorm::ConfigError("cannot write to " + tmp);
    }
    out << text;
    out.flush();
    if (!out) {
      throw fbnorm::ConfigError("write failed for " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw fbnorm::ConfigError("cannot rename " + tmp + " to " + path);
  }
}

std::string matrix_to_csv(const Eigen::MatrixXd& X) {
  std::string text;
  text.reserve(static_cast<std::size_t>(X.size()) * 20);
  char buf[40];
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", X(r, c));
      if (c > 0) text += ',';
      text += buf;
    }
    text += '\n';
  }
  return text;
}

// ---------------------------------------------------------------------------
// Quadrature flags shared by normconst and grad

struct QuadFlags {
  long n_points = 200;
  double omega_d = 1.0;
  double omega_u = 2.0;
  double d = 1.0;
  bool auto_config = false;
};

void add_quad_flags(CLI::App* cmd, QuadFlags& q) {
  cmd->add_option("--n-points", q.n_points,
                  "Grid half-width N of the tapered trapezoidal rule")
      ->capture_default_str();
  cmd->add_option("--omega-d", q.omega_d, "Lower window parameter")
      ->capture_default_str();
  cmd->add_option("--omega-u", q.omega_u, "Upper window parameter")
      ->capture_default_str();
  cmd->add_option("--d", q.d, "Contour distance below min(theta)")
      ->capture_default_str();
  cmd->add_flag("--auto", q.auto_config,
                "Choose N and d from the parameters instead of the fixed "
                "defaults");
}

fbnorm::EulerConfig resolve_quadrature(const QuadFlags& q,
                                       const fbnorm::CanonicalParams& params) {
  if (q.auto_config) {
    return fbnorm::auto_quadrature(params);
  }
  return fbnorm::derive_quadrature(q.n_points, q.omega_d, q.omega_u, q.d);
}

json quad_echo(const fbnorm::EulerConfig& cfg, bool auto_config) {
  return json{{"n_points", cfg.N},
              {"omega_d", cfg.omega_d},
              {"omega_u", cfg.omega_u},
              {"d", cfg.d},
              {"auto", auto_config}};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_normconst(const std::string& param_file, const QuadFlags& q,
                  bool log_only) {
  LoadedParams lp = load_params(param_file);
  fbnorm::EulerConfig cfg = resolve_quadrature(q, lp.canonical);

  auto start = Clock::now();
  fbnorm::NormConstResult r = fbnorm::norm_const(lp.canonical, cfg);
  double ms = elapsed_ms(start);

  json outputs{{"log_value", r.log_value},
               {"imag_residual", r.imag_residual},
               {"quadrature", quad_echo(cfg, q.auto_config)}};
  if (!log_only) outputs["value"] = r.value;
  if (lp.frame) {
    outputs["canonical"] = json{{"theta", to_json(lp.canonical.theta)},
                                {"gamma", to_json(lp.canonical.gamma)}};
    outputs["frame"] = to_json(*lp.frame);
  }
  print_report("normconst",
               json{{"param_file", param_file},
                    {"params", lp.echo},
                    {"log_only", log_only}},
               std::move(outputs), ms);
  return 0;
}

int cmd_grad(const std::string& param_file, const QuadFlags& q,
             bool log_only) {
  LoadedParams lp = load_params(param_file);
  fbnorm::EulerConfig cfg = resolve_quadrature(q, lp.canonical);

  auto start = Clock::now();
  fbnorm::NormConstLogGradient lg =
      fbnorm::norm_const_log_grad(lp.canonical, cfg);
  double ms = elapsed_ms(start);

  json outputs{{"log_value", lg.result.log_value},
               {"imag_residual", lg.result.imag_residual},
               {"quadrature", quad_echo(cfg, q.auto_config)}};
  if (log_only) {
    outputs["dlog_theta"] = to_json(lg.dlog_theta);
    outputs["dlog_gamma"] = to_json(lg.dlog_gamma);
  } else {
    outputs["value"] = lg.result.value;
    std::vector<double> dtheta(lg.dlog_theta.size());
    std::vector<double> dgamma(lg.dlog_gamma.size());
    for (std::size_t i = 0; i < dtheta.size(); ++i) {
      dtheta[i] = lg.result.value * lg.dlog_theta[i];
      dgamma[i] = lg.result.value * lg.dlog_gamma[i];
    }
    outputs["dtheta"] = to_json(dtheta);
    outputs["dgamma"] = to_json(dgamma);
  }
  if (lp.frame) {
    outputs["canonical"] = json{{"theta", to_json(lp.canonical.theta)},
                                {"gamma", to_json(lp.canonical.gamma)}};
    outputs["frame"] = to_json(*lp.frame);
  }
  print_report("grad",
               json{{"param_file", param_file},
                    {"params", lp.echo},
                    {"log_only", log_only}},
               std::move(outputs), ms);
  return 0;
}

int cmd_fit(const std::string& data_csv, const std::string& optimizer,
            std::size_t max_iter, double tol, bool optimize_frame,
            const std::string& init_file) {
  Eigen::MatrixXd X = read_matrix_csv(data_csv);

  // Rows must lie on the unit sphere within 1e-6; rows off by up to 1e-3
  // are pulled back with a warning. Every imperfect row is renormalized so
  // downstream statistics see exactly unit vectors.
  std::vector<std::size_t> bad_rows;
  std::size_t warned = 0;
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    const double norm = X.row(r).norm();
    const double dev = std::abs(norm - 1.0);
    if (dev > 1e-3 || !(norm > 0.0)) {
      bad_rows.push_back(static_cast<std::size_t>(r));
      continue;
    }
    if (dev > 1e-6) ++warned;
    if (dev > 0.0) X.row(r) /= norm;
  }
  if (!bad_rows.empty()) {
    std::string msg = "rows not on the unit sphere (tolerance 1e-3):";
    for (std::size_t i = 0; i < bad_rows.size() && i < 20; ++i) {
      msg += ' ' + std::to_string(bad_rows[i]);
    }
    if (bad_rows.size() > 20) msg += " ...";
    throw fbnorm::DataError(msg, bad_rows);
  }
  if (warned > 0) {
    std::cerr << "warning: renormalized " << warned
              << " row(s) off the unit sphere by more than 1e-6\n";
  }

  fbnorm::FitConfig config;
  config.max_iter = max_iter;
  config.grad_tol = tol;
  config.optimize_frame = optimize_frame;
  if (optimizer == "gd" || optimizer == "gradient-descent") {
    config.optimizer = fbnorm::Optimizer::gradient_descent;
  } else if (optimizer == "qn" || optimizer == "quasi-newton") {
    config.optimizer = fbnorm::Optimizer::quasi_newton;
  } else {
    throw fbnorm::ConfigError("unknown optimizer: " + optimizer +
                              " (expected gd or qn)");
  }
  if (!init_file.empty()) {
    std::ifstream in(init_file);
    if (!in) {
      throw fbnorm::ConfigError("cannot open init file: " + init_file);
    }
    json doc = json::parse(in);
    fbnorm::FitInit init;
    std::vector<double> th = require_number_array(doc, "theta");
    std::vector<double> gm = require_number_array(doc, "gamma");
    init.theta = Eigen::Map<const Eigen::VectorXd>(th.data(),
                                                   static_cast<long>(th.size()));
    init.gamma = Eigen::Map<const Eigen::VectorXd>(gm.data(),
                                                   static_cast<long>(gm.size()));
    if (doc.contains("O")) {
      const auto& rows = doc["O"];
      if (!rows.is_array() || rows.empty()) {
        throw fbnorm::ConfigError("init \"O\" must be a matrix");
      }
      init.O.resize(static_cast<long>(rows.size()),
                    static_cast<long>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != rows.size()) {
          throw fbnorm::ConfigError("init \"O\" must be a square matrix");
        }
        for (std::size_t c = 0; c < rows.size(); ++c) {
          init.O(static_cast<long>(r), static_cast<long>(c)) =
              rows[r][c].get<double>();
        }
      }
    }
    config.init = std::move(init);
  }

  fbnorm::SufficientStats stats = fbnorm::sufficient_stats(X);

  auto start = Clock::now();
  fbnorm::FitResult fr = fbnorm::fit(stats, config);
  double ms = elapsed_ms(start);

  json outputs{{"theta_hat", to_json(fr.theta_hat)},
               {"gamma_hat", to_json(fr.gamma_hat)},
               {"O_hat", to_json(fr.O_hat)},
               {"iterations", fr.iterations},
               {"converged", fr.converged},
               {"final_grad_norm", fr.final_grad_norm},
               {"objective_initial", fr.objective_trace.front()},
               {"objective_final", fr.objective_trace.back()},
               {"objective_trace", to_json(fr.objective_trace)}};
  print_report("fit",
               json{{"data_csv", data_csv},
                    {"n_rows", stats.n},
                    {"p", fr.theta_hat.size()},
                    {"optimizer", optimizer},
                    {"max_iter", max_iter},
                    {"tol", tol},
                    {"optimize_frame", optimize_frame},
                    {"init_file", init_file.empty() ? json() : json(init_file)},
                    {"renormalized_rows", warned}},
               std::move(outputs), ms);
  if (!fr.converged) {
    std::cerr << "error: fit did not converge within " << max_iter
              << " iterations (final gradient norm " << fr.final_grad_norm
              << ")\n";
    return 4;
  }
  return 0;
}

int cmd_sample(const std::string& param_file, std::size_t n,
               std::uint64_t seed, const std::string& out_csv) {
  LoadedParams lp = load_params(param_file);

  auto start = Clock::now();
  fbnorm::SampleBatch batch = fbnorm::sample_fb(lp.canonical, n, seed);
  double ms = elapsed_ms(start);

  Eigen::MatrixXd X = std::move(batch.X);
  if (lp.frame) {
    // Samples were drawn in the eigenbasis y = O x; map back to the
    // original coordinates.
    X = X * (*lp.frame);
  }
  write_text_atomic(out_csv, matrix_to_csv(X));

  print_report("sample",
               json{{"param_file", param_file},
                    {"params", lp.echo},
                    {"n", n},
                    {"seed", seed},
                    {"out", out_csv}},
               json{{"n", n},
                    {"p", X.cols()},
                    {"acceptance_rate", batch.acceptance_rate},
                    {"out", out_csv}},
               ms);
  return 0;
}

int cmd_verify() {
  auto start = Clock::now();
  std::vector<fbnorm::FixtureCheck> checks = fbnorm::run_table_fixtures(1e-6);
  double ms = elapsed_ms(start);

  std::size_t failed = 0;
  json fixture_rows = json::array();
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
    std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.label
              << "  expected=" << c.expected << "  computed=" << c.computed
              << "  |err|=" << c.error << "\n";
    fixture_rows.push_back(json{{"label", c.label},
                                {"expected", c.expected},
                                {"computed", c.computed},
                                {"abs_error", c.error},
                                {"pass", c.pass}});
  }
  print_report("verify",
               json{{"tolerance", 1e-6},
                    {"quadrature", json{{"n_points", 200},
                                        {"omega_d", 1.0},
                                        {"omega_u", 2.0},
                                        {"d", 1.0}}}},
               json{{"n_checks", checks.size()},
                    {"n_failed", failed},
                    {"fixtures", std::move(fixture_rows)}},
               ms);
  return failed == 0 ? 0 : 3;
}

int cmd_bench(const std::string& p_list, long n_points, int repeats,
              std::uint64_t seed, const std::string& out_csv) {
  std::vector<long> dims;
  if (p_list.empty()) {
    for (long p = 10; p <= 200; p += 10) dims.push_back(p);
  } else {
    std::stringstream ss(p_list);
    std::string field;
    while (std::getline(ss, field, ',')) {
      double x = 0.0;
      if (!parse_double(field, x) || x < 2.0 || x != std::floor(x)) {
        throw fbnorm::ConfigError("bad --p-list entry: " + field);
      }
      dims.push_back(static_cast<long>(x));
    }
    if (dims.empty()) {
      throw fbnorm::ConfigError("--p-list is empty");
    }
  }
  if (repeats < 1) {
    throw fbnorm::ConfigError("--repeats must be at least 1");
  }

  fbnorm::EulerConfig cfg = fbnorm::derive_quadrature(n_points, 1.0, 2.0, 1.0);

  auto start = Clock::now();
  json rows = json::array();
  std::string csv = "p,median_ms\n";
  std::vector<double> xs, ys;
  for (long p : dims) {
    fbnorm::CanonicalParams params;
    params.theta.resize(static_cast<std::size_t>(p));
    params.gamma.resize(static_cast<std::size_t>(p));
    fbnorm::CounterRng rng(seed, static_cast<std::uint64_t>(p));
    for (long i = 0; i < p; ++i) {
      params.theta[static_cast<std::size_t>(i)] =
          5.0 * rng.uniform(static_cast<std::uint64_t>(2 * i));
      params.gamma[static_cast<std::size_t>(i)] =
          2.0 * rng.uniform(static_cast<std::uint64_t>(2 * i + 1)) - 1.0;
    }
    fbnorm::norm_const(params, cfg);  // warm-up
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
      auto t0 = Clock::now();
      fbnorm::norm_const(params, cfg);
      times.push_back(elapsed_ms(t0));
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2,
                     times.end());
    const double median = times[times.size() / 2];
    rows.push_back(json{{"p", p}, {"median_ms", median}});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%ld,%.6f\n", p, median);
    csv += buf;
    xs.push_back(static_cast<double>(p));
    ys.push_back(median);
  }
  double ms = elapsed_ms(start);

  // Least-squares line median_ms ~ slope * p + intercept.
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = my - slope * mx;
  const double r2 =
      (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;

  if (!out_csv.empty()) {
    write_text_atomic(out_csv, csv);
  }

  json outputs{{"rows", std::move(rows)},
               {"slope_ms_per_dim", slope},
               {"intercept_ms", intercept},
               {"r2", r2}};
  if (!out_csv.empty()) {
    outputs["out"] = out_csv;
  } else {
    outputs["csv"] = csv;
  }
  print_report("bench",
               json{{"p_list", dims},
                    {"n_points", n_points},
                    {"repeats", repeats},
                    {"seed", seed},
                    {"out", out_csv.empty() ? json() : json(out_csv)}},
               std::move(outputs), ms);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Fisher-Bingham normalizing constants, gradients, fitting, and "
      "sampling on the unit sphere"};
  app.set_version_flag("--version", std::string(fbnorm::kVersion));
  app.require_subcommand(1);

  // normconst / grad
  std::string param_file;
  QuadFlags quad;
  bool log_only = false;

  CLI::App* nc = app.add_subcommand(
      "normconst", "Normalizing constant C(theta, gamma)");
  nc->add_option("param_file", param_file,
                 "JSON with {\"theta\", \"gamma\"} or {\"mu\", \"sigma\"}")
      ->required();
  add_quad_flags(nc, quad);
  nc->add_flag("--log-only", log_only,
               "Report only log C (for values outside double range)");

  CLI::App* gr = app.add_subcommand(
      "grad", "Gradient of C with respect to theta and gamma");
  gr->add_option("param_file", param_file,
                 "JSON with {\"theta\", \"gamma\"} or {\"mu\", \"sigma\"}")
      ->required();
  add_quad_flags(gr, quad);
  gr->add_flag("--log-only", log_only,
               "Report the gradient of log C instead of the gradient of C");

  // fit
  std::string data_csv;
  std::string optimizer = "gd";
  std::size_t max_iter = 50000;
  double tol = 1e-6;
  bool optimize_frame = false;
  std::string init_file;

  CLI::App* ft = app.add_subcommand(
      "fit", "Maximum likelihood fit to unit-sphere data");
  ft->add_option("data_csv", data_csv, "CSV of unit-norm rows (n x p)")
      ->required();
  ft->add_option("--optimizer", optimizer, "gd or qn")->capture_default_str();
  ft->add_option("--max-iter", max_iter, "Iteration cap")
      ->capture_default_str();
  ft->add_option("--tol", tol, "Gradient sup-norm stopping threshold")
      ->capture_default_str();
  ft->add_flag("--optimize-frame", optimize_frame,
               "Also optimize the orthogonal frame O");
  ft->add_option("--init-file", init_file,
                 "JSON with initial {\"theta\", \"gamma\"} and optional "
                 "\"O\"");

  // sample
  std::size_t n_samples = 100;
  std::uint64_t seed = 0;
  std::string out_csv;

  CLI::App* sp = app.add_subcommand(
      "sample", "Rejection sampling from the Fisher-Bingham density");
  sp->add_option("param_file", param_file,
                 "JSON with {\"theta\", \"gamma\"} or {\"mu\", \"sigma\"}")
      ->required();
  sp->add_option("-n,--n", n_samples, "Number of samples")
      ->capture_default_str();
  sp->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sp->add_option("-o,--out", out_csv, "Output CSV path")->required();

  // verify
  app.add_subcommand("verify",
                     "Check the built-in reference fixtures and exact "
                     "cross-checks");

  // bench
  std::string p_list;
  long bench_n_points = 200;
  int repeats = 9;
  std::uint64_t bench_seed = 1;
  std::string bench_out;

  CLI::App* bn = app.add_subcommand(
      "bench", "Time the normalizing constant across dimensions");
  bn->add_option("--p-list", p_list,
                 "Comma-separated dimensions (default 10,20,...,200)");
  bn->add_option("--n-points", bench_n_points, "Grid half-width N")
      ->capture_default_str();
  bn->add_option("--repeats", repeats, "Timed calls per dimension")
      ->capture_default_str();
  bn->add_option("--seed", bench_seed, "Seed for the random parameters")
      ->capture_default_str();
  bn->add_option("-o,--out", bench_out, "Write the CSV here as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error, regardless of CLI11's internal code
  }

  try {
    if (nc->parsed()) return cmd_normconst(param_file, quad, log_only);
    if (gr->parsed()) return cmd_grad(param_file, quad, log_only);
    if (ft->parsed()) {
      return cmd_fit(data_csv, optimizer, max_iter, tol, optimize_frame,
                     init_file);
    }
    if (sp->parsed()) return cmd_sample(param_file, n_samples, seed, out_csv);
    if (app.get_subcommand("verify")->parsed()) return cmd_verify();
    if (bn->parsed()) {
      return cmd_bench(p_list, bench_n_points, repeats, bench_seed, bench_out);
    }
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const fbnorm::StagnationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fbnorm::LowAcceptanceError& e) {
    std::cerr << "error: " << e.what()
              << "\nsuggestions: increase the proposal budget, reduce "
                 "dimension or concentration, or draw fewer samples; the "
                 "observed acceptance rate was "
              << e.rate() << "\n";
    return 4;
  } catch (const fbnorm::AccuracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fbnorm::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fbnorm::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fbnorm::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fbnorm::ConditioningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fbnorm::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
