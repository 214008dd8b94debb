// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <complex>
#include <cstddef>

#include "fbnorm/params.hpp"

namespace fbnorm {

/// Integration contour for the Fourier representation: the integrand's
/// branch points sit at theta_i - t0 on the imaginary axis, so keeping
/// t0 < min theta puts every z_i(t) = theta_i - i t - t0 in the right
/// half-plane at distance d = min theta - t0 from the nearest one.
struct ContourConfig {
  double t0 = 0.0;
  double d = 0.0;
};

/// t0 = min_i theta_i - target_d, d = target_d.
ContourConfig select_contour(const std::vector<double>& theta,
                             double target_d);

/// The Fourier integrand A(t) = prod_i exp(gamma_i^2 / (4 z_i)) / sqrt(z_i)
/// with z_i = theta_i - i t - t0, principal square root. Valid for p >= 1.
/// Throws DomainError when the contour violates t0 < min theta.
std::complex<double> integrand_value(double t, const CanonicalParams& params,
                                     const ContourConfig& contour);

/// dA/dtheta_i = A(t) * (-gamma_i^2 / (4 z_i^2) - 1 / (2 z_i)).
std::complex<double> integrand_dtheta(double t, std::size_t i,
                                      const CanonicalParams& params,
                                      const ContourConfig& contour);

/// dA/dgamma_i = A(t) * gamma_i / (2 z_i).
std::complex<double> integrand_dgamma(double t, std::size_t i,
                                      const CanonicalParams& params,
                                      const ContourConfig& contour);

namespace detail {

/// log A(t) without contour revalidation; the quadrature hot loops call
/// this once per node after validating the contour up front.
std::complex<double> log_integrand(double t, const CanonicalParams& params,
                                   const ContourConfig& contour);

}  // namespace detail

}  // namespace fbnorm
