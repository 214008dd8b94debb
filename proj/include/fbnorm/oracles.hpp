// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbnorm/normconst.hpp"
#include "fbnorm/params.hpp"

namespace fbnorm {

/// Monte Carlo estimate of C with its standard error; reproducible from
/// (seed, n_samples) independent of thread count.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Exact complex-Bingham normalizing constant on the unit complex sphere:
/// 2 pi^p sum_j exp(-theta_j) prod_{k != j} (theta_k - theta_j)^{-1}.
/// Throws ConditioningError when two entries are closer than 1e-6, where
/// the partial fractions lose all precision.
double complex_bingham_exact(const std::vector<double>& theta_c);

/// Embeds complex-Bingham coefficients into real coordinates by
/// duplication: (t1, t2, ...) -> (t1, t1, t2, t2, ...). Feeding the result
/// to norm_const with gamma = 0 reproduces complex_bingham_exact.
std::vector<double> complex_to_real_theta(const std::vector<double>& theta_c);

/// Plain Monte Carlo over the sphere: Area(S^{p-1}) times the mean of
/// exp(sum(-theta_i x_i^2 + gamma_i x_i)) at uniform points.
McEstimate mc_sphere_estimate(const CanonicalParams& params,
                              std::size_t n_samples, std::uint64_t seed);

/// norm_const at a high-resolution grid (same windows, same d, N = N_big),
/// used as the reference in convergence studies.
double reference_quadrature(const CanonicalParams& params, long N_big = 800);

/// One verification fixture: a parameter set with its published reference
/// value. Complex-Bingham fixtures check the quadrature on duplicated
/// coordinates and the closed form separately.
struct FixtureCheck {
  std::string label;
  double expected = 0.0;
  double computed = 0.0;
  double error = 0.0;
  bool pass = false;
};

/// Runs the full table fixture suite (Bingham and Fisher-Bingham rows at
/// the pinned N=200, omega_d=1, omega_u=2, d=1 configuration; complex
/// rows additionally against the closed form) at the given absolute
/// tolerance.
std::vector<FixtureCheck> run_table_fixtures(double tol = 1e-6);

}  // namespace fbnorm
