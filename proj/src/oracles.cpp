// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include "fbnorm/oracles.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fbnorm/errors.hpp"
#include "fbnorm/parallel.hpp"
#include "fbnorm/rng.hpp"

namespace fbnorm {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double sphere_area(std::size_t p) {
  double hp = 0.5 * static_cast<double>(p);
  return std::exp(std::log(2.0) + hp * std::log(kPi) - std::lgamma(hp));
}

// One uniform sphere point for sample index k, written into x (length p).
// Each sample consumes a fixed counter range, so partitioning across
// threads cannot change the stream.
void sphere_point(const CounterRng& rng, std::uint64_t k, std::size_t p,
                  double* x) {
  std::size_t npairs = (p + 1) / 2;
  std::uint64_t base = k * (2 * npairs);
  double norm2 = 0.0;
  for (std::size_t j = 0; j < npairs; ++j) {
    double z0, z1;
    rng.normal_pair(base + 2 * j, z0, z1);
    x[2 * j] = z0;
    if (2 * j + 1 < p) x[2 * j + 1] = z1;
  }
  for (std::size_t i = 0; i < p; ++i) norm2 += x[i] * x[i];
  double inv = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < p; ++i) x[i] *= inv;
}

}  // namespace

double complex_bingham_exact(const std::vector<double>& theta_c) {
  const std::size_t p = theta_c.size();
  if (p < 2) throw DomainError("complex Bingham needs p >= 2");
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j + 1; k < p; ++k) {
      if (std::abs(theta_c[j] - theta_c[k]) < 1e-6) {
        throw ConditioningError(
            "complex Bingham coefficients " + std::to_string(j) + " and " +
            std::to_string(k) +
            " are closer than 1e-6; the partial-fraction form is unusable");
      }
    }
  }
  double total = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    double prod = 1.0;
    for (std::size_t k = 0; k < p; ++k) {
      if (k != j) prod *= theta_c[k] - theta_c[j];
    }
    total += std::exp(-theta_c[j]) / prod;
  }
  return 2.0 * std::pow(kPi, static_cast<double>(p)) * total;
}

std::vector<double> complex_to_real_theta(const std::vector<double>& theta_c) {
  std::vector<double> out;
  out.reserve(2 * theta_c.size());
  for (double t : theta_c) {
    out.push_back(t);
    out.push_back(t);
  }
  return out;
}

McEstimate mc_sphere_estimate(const CanonicalParams& params,
                              std::size_t n_samples, std::uint64_t seed) {
  validate_params(params, 1);
  if (n_samples < 1000) {
    throw DomainError("mc_sphere_estimate needs at least 1000 samples");
  }
  const std::size_t p = params.p();
  const CounterRng rng(seed, 0);

  // Fixed-size chunks with per-chunk accumulators, combined in chunk
  // order, keep the estimate identical for any thread count.
  const std::size_t chunk = 1 << 16;
  const std::size_t n_chunks = (n_samples + chunk - 1) / chunk;
  std::vector<double> sums(n_chunks, 0.0), sqsums(n_chunks, 0.0);

  parallel_chunks(n_chunks, [&](std::size_t c) {
    std::vector<double> x(p);
    double s = 0.0, s2 = 0.0;
    std::size_t lo = c * chunk;
    std::size_t hi = std::min(lo + chunk, n_samples);
    for (std::size_t k = lo; k < hi; ++k) {
      sphere_point(rng, k, p, x.data());
      double e = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        e += -params.theta[i] * x[i] * x[i] + params.gamma[i] * x[i];
      }
      double v = std::exp(e);
      s += v;
      s2 += v * v;
    }
    sums[c] = s;
    sqsums[c] = s2;
  });

  double sum = 0.0, sqsum = 0.0;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    sum += sums[c];
    sqsum += sqsums[c];
  }

  const double n = static_cast<double>(n_samples);
  const double area = sphere_area(p);
  double mean = sum / n;
  double var = (sqsum - n * mean * mean) / (n - 1.0);
  if (var < 0.0) var = 0.0;

  McEstimate out;
  out.estimate = area * mean;
  out.std_error = area * std::sqrt(var / n);
  out.n_samples = n_samples;
  out.seed = seed;
  return out;
}

double reference_quadrature(const CanonicalParams& params, long N_big) {
  if (N_big < 800) {
    throw ConfigError("reference quadrature needs N_big >= 800");
  }
  return norm_const(params, derive_quadrature(N_big, 1.0, 2.0, 1.0)).value;
}

namespace {

void check_real(std::vector<FixtureCheck>& out, const EulerConfig& cfg,
                const std::string& label, const std::vector<double>& theta,
                double expected, double tol) {
  CanonicalParams params{theta, std::vector<double>(theta.size(), 0.0)};
  FixtureCheck c;
  c.label = label;
  c.expected = expected;
  c.computed = norm_const(params, cfg).value;
  c.error = std::abs(c.computed - expected);
  c.pass = c.error < tol;
  out.push_back(std::move(c));
}

void check_complex(std::vector<FixtureCheck>& out, const EulerConfig& cfg,
                   const std::string& label,
                   const std::vector<double>& theta_c, double expected,
                   double tol) {
  std::vector<double> dup = complex_to_real_theta(theta_c);
  CanonicalParams params{dup, std::vector<double>(dup.size(), 0.0)};
  FixtureCheck quad;
  quad.label = label + " quad";
  quad.expected = expected;
  quad.computed = norm_const(params, cfg).value;
  quad.error = std::abs(quad.computed - expected);
  quad.pass = quad.error < tol;
  out.push_back(std::move(quad));

  FixtureCheck exact;
  exact.label = label + " exact";
  exact.expected = expected;
  exact.computed = complex_bingham_exact(theta_c);
  exact.error = std::abs(exact.computed - expected);
  exact.pass = exact.error < tol;
  out.push_back(std::move(exact));
}

}  // namespace

std::vector<FixtureCheck> run_table_fixtures(double tol) {
  // Reference values for six parameter families of Bingham and complex
  // Bingham constants, at the pinned N=200, omega_d=1, omega_u=2, d=1
  // quadrature. Complex rows are additionally checked against the
  // closed-form constant.
  const double kappas[6] = {5, 10, 30, 50, 100, 200};

  const double bingham_0_1_2_k[6] = {4.238950, 2.985576, 1.711919,
                                     1.323994, 0.935094, 0.660814};
  const double bingham_0_1_2_k_k[6] = {3.372017, 1.689355, 0.556123,
                                       0.332661, 0.165940, 0.082871};
  const double cbingham_0_1_2_k[6] = {5.936835, 3.425468, 1.246421,
                                      0.760180, 0.384675, 0.193477};
  const double bingham_0_1_22_k[6] = {1.273161, 0.883394, 0.503213,
                                      0.388775, 0.274375, 0.193826};
  const double bingham_0_1_22_k_k[6] = {1.044072, 0.505223, 0.163901,
                                        0.097828, 0.048725, 0.024316};
  const double cbingham_0_1_22_k[6] = {0.921726, 0.506341, 0.177495,
                                       0.107458, 0.054081, 0.027127};

  EulerConfig cfg = derive_quadrature(200, 1.0, 2.0, 1.0);
  std::vector<FixtureCheck> out;
  out.reserve(48);

  for (int r = 0; r < 6; ++r) {
    double k = kappas[r];
    std::string ks = std::to_string(static_cast<int>(k));
    check_real(out, cfg, "bingham(0,1,2,k) k=" + ks, {0, 1, 2, k},
               bingham_0_1_2_k[r], tol);
    check_real(out, cfg, "bingham(0,1,2,k,k) k=" + ks, {0, 1, 2, k, k},
               bingham_0_1_2_k_k[r], tol);
    check_complex(out, cfg, "cbingham(0,1,2,k) k=" + ks, {0, 1, 2, k},
                  cbingham_0_1_2_k[r], tol);
    check_real(out, cfg, "bingham(0,1,22,k) k=" + ks, {0, 1, 22, k},
               bingham_0_1_22_k[r], tol);
    check_real(out, cfg, "bingham(0,1,22,k,k) k=" + ks, {0, 1, 22, k, k},
               bingham_0_1_22_k_k[r], tol);
    check_complex(out, cfg, "cbingham(0,1,22,k) k=" + ks, {0, 1, 22, k},
                  cbingham_0_1_22_k[r], tol);
  }
  return out;
}

}  // namespace fbnorm
