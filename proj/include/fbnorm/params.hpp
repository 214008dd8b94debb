// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace fbnorm {

/// Gaussian parameterization: mean mu and SPD covariance sigma of the
/// unrestricted distribution whose restriction to the unit sphere is the
/// Fisher-Bingham density.
struct FullParams {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
};

/// Diagonal-frame parameters of the density proportional to
/// exp(sum_i(-theta_i x_i^2 + gamma_i x_i)) on the unit sphere.
struct CanonicalParams {
  std::vector<double> theta;
  std::vector<double> gamma;

  std::size_t p() const { return theta.size(); }
};

/// Canonical parameters plus the orthogonal frame O and an accumulated
/// shift constant, enough to reconstruct the original Gaussian exponent.
struct FrameDecomposition {
  CanonicalParams canonical;
  Eigen::MatrixXd orthogonal;
  double log_scale = 0.0;
};

/// Result of shift_normalize: the canonical-gauge parameters together
/// with the bookkeeping needed to map values and gradients back.
/// C(theta_orig, gamma_orig) = exp(-shift) * C(theta_new, gamma_new),
/// and gamma_new = sign_flips (entrywise) * gamma_orig.
struct ShiftNormalized {
  CanonicalParams params;
  double shift = 0.0;
  std::vector<double> sign_flips;
};

/// Checks that theta and gamma are finite, equally sized, and at least
/// min_p long; throws DomainError otherwise.
void validate_params(const CanonicalParams& params, std::size_t min_p = 2);

/// Reduces (mu, sigma) to diagonal-frame parameters: eigendecomposes
/// sigma, orders coordinates by descending eigenvalue (so theta is
/// ascending), and sets theta_i = 1/(2 lambda_i), gamma = Lambda^{-1} O mu
/// with O the row-eigenvector frame. Throws DomainError when sigma is not
/// symmetric positive definite.
FrameDecomposition from_mean_covariance(const FullParams& full);

/// Translates theta so its minimum is zero and flips the sign of every
/// negative gamma entry, recording both reductions.
ShiftNormalized shift_normalize(const CanonicalParams& params);

}  // namespace fbnorm
