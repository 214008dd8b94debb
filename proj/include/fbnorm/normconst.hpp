// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <optional>
#include <vector>

#include "fbnorm/euler_quad.hpp"
#include "fbnorm/integrand.hpp"
#include "fbnorm/params.hpp"

namespace fbnorm {

/// Normalizing constant in log scale. value = exp(log_value) and is
/// infinite or zero when C leaves the double range; imag_residual is
/// |imag|/|real| of the raw quadrature sum, a free accuracy diagnostic.
struct NormConstResult {
  double log_value = 0.0;
  double value = 0.0;
  double imag_residual = 0.0;
};

struct NormConstGradient {
  std::vector<double> dtheta;
  std::vector<double> dgamma;
};

/// Value together with the gradient of log C: dlog_theta_i = C_theta_i / C
/// and dlog_gamma_i = C_gamma_i / C. The log-gradient form stays finite
/// even when C itself under- or overflows, and is what the fitting code
/// consumes directly.
struct NormConstLogGradient {
  NormConstResult result;
  std::vector<double> dlog_theta;
  std::vector<double> dlog_gamma;
};

struct Moments {
  std::vector<double> mean;     // E[x_i]   = C_gamma_i / C
  std::vector<double> second;   // E[x_i^2] = -C_theta_i / C
};

/// Picks a quadrature configuration for the given parameters from the
/// alias-error model of the trapezoidal rule: the contour distance d is
/// grown from 1 until the modeled tail error drops below exp(-26), and N
/// is enlarged with d (never below 200). The gamma norm enters the model
/// through a coarse upper quantization so that nearby parameter sets map
/// to the same configuration.
EulerConfig auto_quadrature(const CanonicalParams& params);

/// C(theta, gamma) = pi^{p/2-1} e^{-t0} Re sum of A(t) e^{-it} over the
/// tapered grid, times the shift-normalization factor. With no explicit
/// config, auto_quadrature chooses one. Throws AccuracyError when the
/// quadrature's imaginary residual reaches 1e-8 or the real part is not
/// positive.
NormConstResult norm_const(const CanonicalParams& params,
                           const std::optional<EulerConfig>& quad = {});

/// dC/dtheta_i and dC/dgamma_i, sharing one integrand evaluation per node
/// across all 2p partials. Sign flips from shift normalization are folded
/// back into dgamma.
NormConstGradient norm_const_grad(const CanonicalParams& params,
                                  const std::optional<EulerConfig>& quad = {});

/// Fused value-and-log-gradient evaluation (one pass over the grid).
NormConstLogGradient norm_const_log_grad(
    const CanonicalParams& params,
    const std::optional<EulerConfig>& quad = {});

/// First and second coordinate moments of the distribution, from the
/// exponential-family identities E[x_i] = C_gamma_i/C, E[x_i^2] = -C_theta_i/C.
Moments moments(const CanonicalParams& params,
                const std::optional<EulerConfig>& quad = {});

namespace detail {

/// Fused evaluation with the gradient pass optional. The value
/// accumulation performs the same operations in both modes, so a
/// value-only call returns bit-identically the same log_value as a
/// gradient call at the same point; the fitting code relies on this when
/// mixing line-search and gradient evaluations. Gradient fields are empty
/// when want_grad is false.
NormConstLogGradient norm_const_fused(const CanonicalParams& params,
                                      const EulerConfig& quad,
                                      bool want_grad);

}  // namespace detail

}  // namespace fbnorm
