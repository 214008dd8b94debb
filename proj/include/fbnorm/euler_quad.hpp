// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "fbnorm/errors.hpp"

namespace fbnorm {

/// Parameters of the continuous-Euler-transformed trapezoidal rule.
/// The grid is t = n*h for n = -N-1, ..., N, and each node is weighted by
/// a smooth erfc taper so the oscillatory tail cancels.
struct EulerConfig {
  long N = 0;
  double omega_d = 1.0;
  double omega_u = 2.0;
  double d = 1.0;
  double h = 0.0;
  double taper_scale = 0.0;  // scale inside the erfc argument
  double taper_shift = 0.0;  // offset inside the erfc argument
};

/// Complementary error function, accurate to about 1e-13 relative on the
/// real line, implemented in-repo so results are platform-independent.
double erfc(double x);

/// Validates the window constraints and fills in the derived quantities
///   h = sqrt(2 pi d (omega_d + omega_u) / (omega_d^2 N)),
///   taper_scale = sqrt(N h / omega_d),
///   taper_shift = sqrt(omega_d N h / 4).
/// Throws ConfigError naming the violated inequality.
EulerConfig derive_quadrature(long N, double omega_d, double omega_u,
                              double d);

/// Taper weight w(x) = erfc(x / taper_scale - taper_shift) / 2 for x >= 0.
inline double euler_weight(double x, const EulerConfig& config) {
  return 0.5 * erfc(x / config.taper_scale - config.taper_shift);
}

/// Tapered trapezoidal sum h * sum_{n=-N-1}^{N} w(|n h|) g(n h).
/// The caller folds the oscillatory factor into g. Nodes are accumulated
/// in a fixed order with compensated summation, so the result is
/// bit-reproducible for a given config. A non-finite g value raises
/// NumericalError identifying the node.
template <typename G>
std::complex<double> weighted_oscillatory_sum(G&& g, const EulerConfig& config) {
  std::complex<double> sum(0.0, 0.0);
  std::complex<double> comp(0.0, 0.0);
  for (long n = -config.N - 1; n <= config.N; ++n) {
    double t = static_cast<double>(n) * config.h;
    std::complex<double> v = g(t) * euler_weight(std::abs(t), config);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError(
          "non-finite integrand value at node n=" + std::to_string(n), n);
    }
    // Kahan compensation applied to the real and imaginary parts at once.
    std::complex<double> y = v - comp;
    std::complex<double> s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum * config.h;
}

}  // namespace fbnorm
