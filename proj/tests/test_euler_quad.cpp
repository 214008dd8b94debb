// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "fbnorm/errors.hpp"
#include "fbnorm/euler_quad.hpp"

using fbnorm::ConfigError;
using fbnorm::EulerConfig;
using fbnorm::NumericalError;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Reference erfc, independent of the library implementation: Maclaurin
// series of erf for small arguments, modified-Lentz evaluation of the
// continued fraction sqrt(pi) e^{x^2} erfc(x) =
// 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...))))) for large ones,
// reflection for negatives.
double erfc_oracle(double x) {
  if (x < 0.0) return 2.0 - erfc_oracle(-x);
  if (x < 2.0) {
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int n = 1; n < 200; ++n) {
      term *= -x2 / n;
      const double add = term / (2 * n + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return 1.0 - 2.0 / std::sqrt(kPi) * sum;
  }
  const double tiny = 1e-300;
  double f = tiny;  // b0 = 0
  double C = f;
  double D = 0.0;
  for (int n = 1; n < 400; ++n) {
    const double a = n == 1 ? 1.0 : (n - 1) * 0.5;
    const double b = x;
    D = b + a * D;
    if (D == 0.0) D = tiny;
    C = b + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / std::sqrt(kPi) * f;
}

}  // namespace

TEST_CASE("derive_quadrature reference configuration") {
  EulerConfig cfg = fbnorm::derive_quadrature(200, 1.0, 2.0, 1.0);
  const double h = std::sqrt(6.0 * kPi / 200.0);
  CHECK(cfg.N == 200);
  CHECK(std::abs(cfg.h - h) < 1e-14 * h);
  CHECK(std::abs(cfg.taper_scale - std::sqrt(200.0 * h)) <
        1e-14 * cfg.taper_scale);
  CHECK(std::abs(cfg.taper_shift - std::sqrt(200.0 * h / 4.0)) <
        1e-14 * cfg.taper_shift);
  CHECK(cfg.h == doctest::Approx(0.30700).epsilon(1e-4));
  CHECK(cfg.taper_scale == doctest::Approx(7.8358).epsilon(1e-4));
  CHECK(cfg.taper_shift == doctest::Approx(3.9179).epsilon(1e-4));
}

TEST_CASE("derive_quadrature formulas hold across configurations") {
  for (long N : {8L, 57L, 200L, 1000L}) {
    for (double d : {0.5, 1.0, 2.0}) {
      EulerConfig cfg = fbnorm::derive_quadrature(N, 0.9, 2.5, d);
      const double h = std::sqrt(2.0 * kPi * d * (0.9 + 2.5) / (0.81 * N));
      CHECK(std::abs(cfg.h - h) < 1e-14 * h);
      CHECK(std::abs(cfg.taper_scale - std::sqrt(N * h / 0.9)) <
            1e-14 * cfg.taper_scale);
      CHECK(std::abs(cfg.taper_shift - std::sqrt(0.9 * N * h / 4.0)) <
            1e-14 * cfg.taper_shift);
    }
  }
}

TEST_CASE("derive_quadrature rejects constraint violations") {
  // N below 2d(omega_d+omega_u)omega_u^2/(pi omega_d^2) = 24/pi ~ 7.64.
  CHECK_THROWS_AS(fbnorm::derive_quadrature(7, 1.0, 2.0, 1.0), ConfigError);
  CHECK_NOTHROW(fbnorm::derive_quadrature(8, 1.0, 2.0, 1.0));
  // omega_d / omega_u above 1/2.
  CHECK_THROWS_AS(fbnorm::derive_quadrature(200, 1.0, 1.5, 1.0), ConfigError);
  // omega_d above 1.
  CHECK_THROWS_AS(fbnorm::derive_quadrature(200, 1.2, 3.0, 1.0), ConfigError);
  // omega_u below 1.
  CHECK_THROWS_AS(fbnorm::derive_quadrature(200, 0.4, 0.9, 1.0), ConfigError);
  // Non-positive N or d.
  CHECK_THROWS_AS(fbnorm::derive_quadrature(0, 1.0, 2.0, 1.0), ConfigError);
  CHECK_THROWS_AS(fbnorm::derive_quadrature(200, 1.0, 2.0, 0.0), ConfigError);
  CHECK_THROWS_AS(fbnorm::derive_quadrature(200, 1.0, 2.0, -1.0), ConfigError);
}

TEST_CASE("constraint errors name the violated inequality") {
  try {
    fbnorm::derive_quadrature(7, 1.0, 2.0, 1.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("N") != std::string::npos);
  }
  try {
    fbnorm::derive_quadrature(200, 1.0, 1.5, 1.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("omega") != std::string::npos);
  }
}

TEST_CASE("erfc agrees with the series and continued-fraction oracle") {
  CHECK(fbnorm::erfc(0.0) == 1.0);
  CHECK(fbnorm::erfc(1.0) ==
        doctest::Approx(0.157299207050285).epsilon(1e-12));

  for (int k = 0; k <= 200; ++k) {
    const double x = -10.0 + 0.1 * k;
    const double want = erfc_oracle(x);
    const double got = fbnorm::erfc(x);
    CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
  }
  // Far tail keeps relative accuracy.
  for (double x : {12.0, 15.0, 20.0, 25.0}) {
    const double want = erfc_oracle(x);
    CHECK(std::abs(fbnorm::erfc(x) - want) <= 1e-11 * want);
  }
}

TEST_CASE("erfc reflection identity") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> ux(0.0, 8.0);
  for (int k = 0; k < 100; ++k) {
    const double x = ux(gen);
    CHECK(std::abs(fbnorm::erfc(-x) - (2.0 - fbnorm::erfc(x))) < 1e-15 * 2.0);
  }
}

TEST_CASE("euler_weight values and monotonicity") {
  EulerConfig cfg = fbnorm::derive_quadrature(200, 1.0, 2.0, 1.0);
  CHECK(fbnorm::euler_weight(cfg.taper_scale * cfg.taper_shift, cfg) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fbnorm::euler_weight(0.0, cfg) == doctest::Approx(1.0).epsilon(2e-8));
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 50; ++k) {
    const double w = fbnorm::euler_weight(k * 1.5, cfg);
    CHECK(w > 0.0);
    CHECK(w < 1.0);
    CHECK(w <= prev);
    prev = w;
  }
}

TEST_CASE("weighted sum reproduces the half-power kernel closed form") {
  // integral of (1 - it)^{-1/2} e^{-it} dt over the real line equals
  // 2 pi e^{-1} / Gamma(1/2) = 2 sqrt(pi) / e.
  EulerConfig cfg = fbnorm::derive_quadrature(200, 1.0, 2.0, 1.0);
  auto g = [](double t) {
    const std::complex<double> z(1.0, -t);
    return std::exp(std::complex<double>(0.0, -t)) / std::sqrt(z);
  };
  const std::complex<double> sum = fbnorm::weighted_oscillatory_sum(g, cfg);
  const double want = 2.0 * std::sqrt(kPi) * std::exp(-1.0);
  CHECK(std::abs(sum.real() - want) < 1e-6);
}

TEST_CASE("weighted sum of a conjugate-symmetric integrand is nearly real") {
  EulerConfig cfg = fbnorm::derive_quadrature(200, 1.0, 2.0, 1.0);
  auto g = [](double t) {
    // g(-t) = conj(g(t)); fast decay keeps the one unpaired node harmless.
    const double a = 1.0 / (1.0 + t * t);
    const double b = t / ((1.0 + t * t) * (1.0 + t * t));
    return std::complex<double>(a, b);
  };
  const std::complex<double> sum = fbnorm::weighted_oscillatory_sum(g, cfg);
  CHECK(std::abs(sum.imag()) <= 1e-10 * std::abs(sum.real()));
}

TEST_CASE("weighted sum is linear in the integrand") {
  EulerConfig cfg = fbnorm::derive_quadrature(64, 1.0, 2.0, 1.0);
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> ua(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double alpha = ua(gen);
    const double phase = ua(gen);
    auto g1 = [&](double t) {
      return std::exp(std::complex<double>(-0.1 * t * t, phase * t));
    };
    auto g2 = [&](double t) {
      return std::complex<double>(std::cos(t), std::sin(0.5 * t)) /
             (1.0 + std::abs(t));
    };
    auto combo = [&](double t) { return alpha * g1(t) + g2(t); };
    const std::complex<double> lhs =
        fbnorm::weighted_oscillatory_sum(combo, cfg);
    const std::complex<double> rhs =
        alpha * fbnorm::weighted_oscillatory_sum(g1, cfg) +
        fbnorm::weighted_oscillatory_sum(g2, cfg);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("non-finite integrand values identify the node") {
  EulerConfig cfg = fbnorm::derive_quadrature(16, 1.0, 2.0, 1.0);
  auto g = [&](double t) {
    if (std::abs(t - 3.0 * cfg.h) < 1e-12) {
      return std::complex<double>(
          std::numeric_limits<double>::quiet_NaN(), 0.0);
    }
    return std::complex<double>(1.0, 0.0);
  };
  try {
    fbnorm::weighted_oscillatory_sum(g, cfg);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.node() == 3);
    CHECK(std::string(e.what()).find("node") != std::string::npos);
  }
}
