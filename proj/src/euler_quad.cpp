// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include "fbnorm/euler_quad.hpp"

#include <cmath>
#include <sstream>

namespace fbnorm {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

EulerConfig derive_quadrature(long N, double omega_d, double omega_u,
                              double d) {
  std::ostringstream msg;
  if (!(N > 0)) {
    msg << "N must be positive (got " << N << ")";
    throw ConfigError(msg.str());
  }
  if (!(d > 0.0) || !std::isfinite(d)) {
    msg << "d must be positive and finite (got " << d << ")";
    throw ConfigError(msg.str());
  }
  if (!(omega_d > 0.0) || !(omega_d <= 1.0)) {
    msg << "violated constraint 0 < omega_d <= 1 (omega_d = " << omega_d
        << ")";
    throw ConfigError(msg.str());
  }
  if (!(omega_u >= 1.0) || !std::isfinite(omega_u)) {
    msg << "violated constraint omega_u >= 1 (omega_u = " << omega_u << ")";
    throw ConfigError(msg.str());
  }
  if (!(omega_d / omega_u <= 0.5)) {
    msg << "violated constraint omega_d/omega_u <= 1/2 (ratio = "
        << omega_d / omega_u << ")";
    throw ConfigError(msg.str());
  }
  double n_min = 2.0 * d * (omega_d + omega_u) * omega_u * omega_u /
                 (kPi * omega_d * omega_d);
  if (static_cast<double>(N) < n_min) {
    msg << "violated constraint N >= 2d(omega_d+omega_u)omega_u^2/(pi "
           "omega_d^2) (N = "
        << N << ", bound = " << n_min << ")";
    throw ConfigError(msg.str());
  }

  EulerConfig cfg;
  cfg.N = N;
  cfg.omega_d = omega_d;
  cfg.omega_u = omega_u;
  cfg.d = d;
  cfg.h = std::sqrt(2.0 * kPi * d * (omega_d + omega_u) /
                    (omega_d * omega_d * static_cast<double>(N)));
  cfg.taper_scale = std::sqrt(static_cast<double>(N) * cfg.h / omega_d);
  cfg.taper_shift =
      std::sqrt(omega_d * static_cast<double>(N) * cfg.h / 4.0);
  return cfg;
}

}  // namespace fbnorm
