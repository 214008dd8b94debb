// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fbnorm/errors.hpp"
#include "fbnorm/integrand.hpp"
#include "fbnorm/params.hpp"

using fbnorm::CanonicalParams;
using fbnorm::ContourConfig;
using fbnorm::DomainError;

namespace {

CanonicalParams make_params(std::vector<double> theta,
                            std::vector<double> gamma) {
  CanonicalParams p;
  p.theta = std::move(theta);
  p.gamma = std::move(gamma);
  return p;
}

}  // namespace

TEST_CASE("select_contour definition") {
  ContourConfig c1 = fbnorm::select_contour({0.0, 1.0, 2.0, 5.0}, 1.0);
  CHECK(c1.t0 == -1.0);
  CHECK(c1.d == 1.0);

  ContourConfig c2 = fbnorm::select_contour({3.0, 4.0}, 1.0);
  CHECK(c2.t0 == 2.0);
  CHECK(c2.d == 1.0);
}

TEST_CASE("select_contour keeps every branch point at distance d") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> uth(-4.0, 9.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> theta(3);
    for (auto& t : theta) t = uth(gen);
    const double d = 0.25 + 2.0 * std::uniform_real_distribution<double>(
                                      0.0, 1.0)(gen);
    ContourConfig c = fbnorm::select_contour(theta, d);
    for (double th : theta) {
      CHECK(th - c.t0 >= d - 1e-12);  // Re z_i = theta_i - t0 >= d
    }
  }
}

TEST_CASE("select_contour rejects bad inputs") {
  CHECK_THROWS_AS(fbnorm::select_contour({}, 1.0), DomainError);
  CHECK_THROWS_AS(fbnorm::select_contour({0.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(fbnorm::select_contour({0.0, 1.0}, -2.0), DomainError);
}

TEST_CASE("integrand value at the one-dimensional reference point") {
  CanonicalParams p = make_params({1.0}, {0.0});
  ContourConfig contour{0.0, 1.0};
  std::complex<double> v = fbnorm::integrand_value(0.0, p, contour);
  CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("integrand theta-derivative at the one-dimensional point") {
  CanonicalParams p = make_params({1.0}, {0.0});
  ContourConfig contour{0.0, 1.0};
  std::complex<double> v = fbnorm::integrand_dtheta(0.0, 0, p, contour);
  CHECK(v.real() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("integrand is conjugate-symmetric in t") {
  CanonicalParams p = make_params({0.0, 1.0, 2.5}, {0.5, 1.5, 0.0});
  ContourConfig contour = fbnorm::select_contour(p.theta, 1.0);
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> ut(0.0, 30.0);
  for (int k = 0; k < 25; ++k) {
    const double t = ut(gen);
    const std::complex<double> plus = fbnorm::integrand_value(t, p, contour);
    const std::complex<double> minus =
        fbnorm::integrand_value(-t, p, contour);
    CHECK(minus.real() == doctest::Approx(plus.real()).epsilon(1e-14));
    CHECK(minus.imag() == doctest::Approx(-plus.imag()).epsilon(1e-14));

    const std::complex<double> dg_plus =
        fbnorm::integrand_dgamma(t, 1, p, contour);
    const std::complex<double> dg_minus =
        fbnorm::integrand_dgamma(-t, 1, p, contour);
    CHECK(dg_minus.real() == doctest::Approx(dg_plus.real()).epsilon(1e-14));
    CHECK(dg_minus.imag() == doctest::Approx(-dg_plus.imag()).epsilon(1e-14));
  }
}

TEST_CASE("integrand value ignores gamma signs bit-exactly") {
  CanonicalParams plus = make_params({0.0, 0.7, 3.0}, {0.4, 1.2, 2.1});
  CanonicalParams mixed = make_params({0.0, 0.7, 3.0}, {-0.4, 1.2, -2.1});
  ContourConfig contour = fbnorm::select_contour(plus.theta, 1.0);
  for (double t : {-7.3, -1.0, 0.0, 0.31, 12.9}) {
    const std::complex<double> a = fbnorm::integrand_value(t, plus, contour);
    const std::complex<double> b = fbnorm::integrand_value(t, mixed, contour);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }
}

TEST_CASE("gamma-derivative vanishes where gamma is zero") {
  CanonicalParams p = make_params({0.0, 1.0, 4.0}, {0.0, 2.0, 0.0});
  ContourConfig contour = fbnorm::select_contour(p.theta, 1.0);
  for (double t : {-5.0, 0.0, 0.9, 17.0}) {
    std::complex<double> d0 = fbnorm::integrand_dgamma(t, 0, p, contour);
    std::complex<double> d2 = fbnorm::integrand_dgamma(t, 2, p, contour);
    CHECK(d0 == std::complex<double>(0.0, 0.0));
    CHECK(d2 == std::complex<double>(0.0, 0.0));
    CHECK(fbnorm::integrand_dgamma(t, 1, p, contour) !=
          std::complex<double>(0.0, 0.0));
  }
}

TEST_CASE("derivatives match central finite differences") {
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> uth(0.0, 5.0);
  std::uniform_real_distribution<double> ugm(-3.0, 3.0);
  std::uniform_real_distribution<double> ut(-20.0, 20.0);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 2 + trial % 4;
    CanonicalParams params;
    params.theta.resize(p);
    params.gamma.resize(p);
    for (int i = 0; i < p; ++i) {
      params.theta[i] = uth(gen);
      params.gamma[i] = ugm(gen);
    }
    ContourConfig contour = fbnorm::select_contour(params.theta, 1.0);
    const double t = ut(gen);
    const int i = trial % p;

    const double step = 1e-6;
    CanonicalParams up = params, dn = params;
    up.theta[i] += step;
    dn.theta[i] -= step;
    std::complex<double> fd_th =
        (fbnorm::integrand_value(t, up, contour) -
         fbnorm::integrand_value(t, dn, contour)) /
        (2.0 * step);
    std::complex<double> an_th =
        fbnorm::integrand_dtheta(t, static_cast<std::size_t>(i), params,
                                 contour);
    CHECK(std::abs(fd_th - an_th) <= 1e-6 * std::max(1e-8, std::abs(an_th)));

    up = params;
    dn = params;
    up.gamma[i] += step;
    dn.gamma[i] -= step;
    std::complex<double> fd_gm =
        (fbnorm::integrand_value(t, up, contour) -
         fbnorm::integrand_value(t, dn, contour)) /
        (2.0 * step);
    std::complex<double> an_gm =
        fbnorm::integrand_dgamma(t, static_cast<std::size_t>(i), params,
                                 contour);
    // The FD result of the sign-invariant value function corresponds to
    // the derivative at |gamma|; compare accordingly.
    if (params.gamma[i] < 0.0) fd_gm = -fd_gm;
    CHECK(std::abs(fd_gm - an_gm) <= 1e-6 * std::max(1e-8, std::abs(an_gm)));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("contour on the wrong side of a branch point is rejected") {
  CanonicalParams p = make_params({0.0, 1.0}, {0.0, 0.0});
  ContourConfig bad{5.0, 1.0};  // t0 >= min(theta)
  CHECK_THROWS_AS(fbnorm::integrand_value(0.0, p, bad), DomainError);
  CHECK_THROWS_AS(fbnorm::integrand_dtheta(0.0, 0, p, bad), DomainError);
  CHECK_THROWS_AS(fbnorm::integrand_dgamma(0.0, 0, p, bad), DomainError);

  ContourConfig boundary{0.0, 1.0};  // t0 == min(theta): still invalid
  CHECK_THROWS_AS(fbnorm::integrand_value(0.0, p, boundary), DomainError);
}
