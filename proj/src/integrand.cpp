// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include "fbnorm/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbnorm/errors.hpp"

namespace fbnorm {

namespace {

void check_contour(const CanonicalParams& params, const ContourConfig& c) {
  validate_params(params, 1);
  double tmin = *std::min_element(params.theta.begin(), params.theta.end());
  if (!(c.t0 < tmin)) {
    throw DomainError("contour t0 = " + std::to_string(c.t0) +
                      " must lie strictly below min theta = " +
                      std::to_string(tmin));
  }
}

}  // namespace

namespace detail {

// log A(t) = sum_i (gamma_i^2 / (4 z_i) - log(z_i)/2); combining the
// factors in log form keeps the product finite for large p.
std::complex<double> log_integrand(double t, const CanonicalParams& params,
                                   const ContourConfig& c) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < params.p(); ++i) {
    std::complex<double> z(params.theta[i] - c.t0, -t);
    acc += params.gamma[i] * params.gamma[i] / (4.0 * z) - 0.5 * std::log(z);
  }
  return acc;
}

}  // namespace detail

ContourConfig select_contour(const std::vector<double>& theta,
                             double target_d) {
  if (theta.empty()) throw DomainError("empty theta");
  if (!(target_d > 0.0) || !std::isfinite(target_d)) {
    throw DomainError("contour distance must be positive");
  }
  ContourConfig c;
  c.t0 = *std::min_element(theta.begin(), theta.end()) - target_d;
  c.d = target_d;
  return c;
}

std::complex<double> integrand_value(double t, const CanonicalParams& params,
                                     const ContourConfig& contour) {
  check_contour(params, contour);
  return std::exp(detail::log_integrand(t, params, contour));
}

std::complex<double> integrand_dtheta(double t, std::size_t i,
                                      const CanonicalParams& params,
                                      const ContourConfig& contour) {
  check_contour(params, contour);
  std::complex<double> z(params.theta[i] - contour.t0, -t);
  std::complex<double> factor =
      -params.gamma[i] * params.gamma[i] / (4.0 * z * z) - 0.5 / z;
  return std::exp(detail::log_integrand(t, params, contour)) * factor;
}

std::complex<double> integrand_dgamma(double t, std::size_t i,
                                      const CanonicalParams& params,
                                      const ContourConfig& contour) {
  check_contour(params, contour);
  std::complex<double> z(params.theta[i] - contour.t0, -t);
  return std::exp(detail::log_integrand(t, params, contour)) *
         params.gamma[i] / (2.0 * z);
}

}  // namespace fbnorm
