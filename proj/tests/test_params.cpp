// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "fbnorm/errors.hpp"
#include "fbnorm/normconst.hpp"
#include "fbnorm/params.hpp"

using fbnorm::CanonicalParams;
using fbnorm::DomainError;
using fbnorm::FrameDecomposition;
using fbnorm::FullParams;
using fbnorm::ShiftNormalized;

namespace {

Eigen::MatrixXd random_orthogonal(int p, std::mt19937& gen) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd M(p, p);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c) M(r, c) = normal(gen);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ();
  // Fix the sign ambiguity so Q is a proper sample.
  Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (int c = 0; c < p; ++c) {
    if (diag(c) < 0.0) Q.col(c) = -Q.col(c);
  }
  return Q;
}

Eigen::VectorXd random_sphere_point(int p, std::mt19937& gen) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(p);
  for (int i = 0; i < p; ++i) x(i) = normal(gen);
  return x / x.norm();
}

}  // namespace

TEST_CASE("validate_params rejects malformed inputs") {
  CanonicalParams bad;
  bad.theta = {0.0, 1.0};
  bad.gamma = {0.0};
  CHECK_THROWS_AS(fbnorm::validate_params(bad), DomainError);

  CanonicalParams tiny;
  tiny.theta = {1.0};
  tiny.gamma = {1.0};
  CHECK_THROWS_AS(fbnorm::validate_params(tiny), DomainError);
  CHECK_NOTHROW(fbnorm::validate_params(tiny, 1));

  CanonicalParams nan_entry;
  nan_entry.theta = {0.0, std::numeric_limits<double>::quiet_NaN()};
  nan_entry.gamma = {0.0, 0.0};
  CHECK_THROWS_AS(fbnorm::validate_params(nan_entry), DomainError);

  CanonicalParams inf_entry;
  inf_entry.theta = {0.0, 1.0};
  inf_entry.gamma = {std::numeric_limits<double>::infinity(), 0.0};
  CHECK_THROWS_AS(fbnorm::validate_params(inf_entry), DomainError);
}

TEST_CASE("from_mean_covariance identity covariance") {
  FullParams full;
  full.mu = Eigen::VectorXd::Zero(3);
  full.sigma = Eigen::MatrixXd::Identity(3, 3);
  FrameDecomposition dec = fbnorm::from_mean_covariance(full);

  for (int i = 0; i < 3; ++i) {
    CHECK(dec.canonical.theta[i] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dec.canonical.gamma[i] == doctest::Approx(0.0));
  }
  CHECK((dec.orthogonal - Eigen::MatrixXd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(dec.log_scale == 0.0);
}

TEST_CASE("from_mean_covariance diagonal example") {
  FullParams full;
  full.mu.resize(2);
  full.mu << 1.0, 1.0;
  full.sigma = Eigen::Vector2d(0.5, 0.25).asDiagonal();
  FrameDecomposition dec = fbnorm::from_mean_covariance(full);

  CHECK(dec.canonical.theta[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dec.canonical.theta[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(dec.canonical.gamma[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(dec.canonical.gamma[1] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK((dec.orthogonal - Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("from_mean_covariance reconstruction at random sphere points") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 5; ++trial) {
    const int p = 3 + trial % 3;
    Eigen::MatrixXd Q = random_orthogonal(p, gen);
    Eigen::VectorXd lam(p);
    std::uniform_real_distribution<double> ulam(0.1, 3.0);
    for (int i = 0; i < p; ++i) lam(i) = ulam(gen);
    Eigen::MatrixXd sigma = Q * lam.asDiagonal() * Q.transpose();
    Eigen::VectorXd mu(p);
    std::uniform_real_distribution<double> umu(-1.0, 1.0);
    for (int i = 0; i < p; ++i) mu(i) = umu(gen);

    FullParams full{mu, sigma};
    FrameDecomposition dec = fbnorm::from_mean_covariance(full);
    const Eigen::MatrixXd& O = dec.orthogonal;

    CHECK((O * O.transpose() - Eigen::MatrixXd::Identity(p, p))
              .cwiseAbs()
              .maxCoeff() < 1e-10);

    Eigen::MatrixXd sigma_inv = sigma.inverse();
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd x = random_sphere_point(p, gen);
      double want = -0.5 * x.dot(sigma_inv * x) + x.dot(sigma_inv * mu);
      Eigen::VectorXd y = O * x;
      double got = 0.0;
      for (int i = 0; i < p; ++i) {
        got += -dec.canonical.theta[i] * y(i) * y(i) +
               dec.canonical.gamma[i] * y(i);
      }
      CHECK(std::abs(got - want) < 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("from_mean_covariance rejects bad sigma") {
  FullParams nonsym;
  nonsym.mu = Eigen::VectorXd::Zero(2);
  nonsym.sigma.resize(2, 2);
  nonsym.sigma << 1.0, 0.5, 0.2, 1.0;
  CHECK_THROWS_AS(fbnorm::from_mean_covariance(nonsym), DomainError);

  FullParams nonpd;
  nonpd.mu = Eigen::VectorXd::Zero(2);
  nonpd.sigma.resize(2, 2);
  nonpd.sigma << 1.0, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(fbnorm::from_mean_covariance(nonpd), DomainError);

  FullParams mismatched;
  mismatched.mu = Eigen::VectorXd::Zero(3);
  mismatched.sigma = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(fbnorm::from_mean_covariance(mismatched), DomainError);
}

TEST_CASE("shift_normalize basic example") {
  CanonicalParams params;
  params.theta = {3.0, 4.0, 5.0};
  params.gamma = {1.0, -2.0, 0.0};
  ShiftNormalized sn = fbnorm::shift_normalize(params);

  CHECK(sn.shift == 3.0);
  CHECK(sn.params.theta[0] == 0.0);
  CHECK(sn.params.theta[1] == 1.0);
  CHECK(sn.params.theta[2] == 2.0);
  CHECK(sn.params.gamma[0] == 1.0);
  CHECK(sn.params.gamma[1] == 2.0);
  CHECK(sn.params.gamma[2] == 0.0);
  CHECK(sn.sign_flips[0] == 1.0);
  CHECK(sn.sign_flips[1] == -1.0);
  CHECK(sn.sign_flips[2] == 1.0);
}

TEST_CASE("shift_normalize leaves canonical input unchanged") {
  CanonicalParams params;
  params.theta = {0.0, 1.0};
  params.gamma = {0.0, 0.0};
  ShiftNormalized sn = fbnorm::shift_normalize(params);
  CHECK(sn.shift == 0.0);
  CHECK(sn.params.theta == params.theta);
  CHECK(sn.params.gamma == params.gamma);
}

TEST_CASE("shift_normalize is idempotent") {
  CanonicalParams params;
  params.theta = {-2.0, 0.5, 7.0};
  params.gamma = {-1.0, 3.0, -0.25};
  ShiftNormalized once = fbnorm::shift_normalize(params);
  ShiftNormalized twice = fbnorm::shift_normalize(once.params);
  CHECK(twice.shift == 0.0);
  CHECK(twice.params.theta == once.params.theta);
  CHECK(twice.params.gamma == once.params.gamma);
}

TEST_CASE("shift identity holds through the normalizing constant") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> uth(-2.0, 6.0);
  std::uniform_real_distribution<double> ugm(-3.0, 3.0);
  std::uniform_real_distribution<double> uc(-5.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    CanonicalParams params;
    const int p = 2 + trial % 4;
    params.theta.resize(p);
    params.gamma.resize(p);
    for (int i = 0; i < p; ++i) {
      params.theta[i] = uth(gen);
      params.gamma[i] = ugm(gen);
    }
    const double c = uc(gen);
    CanonicalParams shifted = params;
    for (int i = 0; i < p; ++i) shifted.theta[i] += c;

    double log_a = fbnorm::norm_const(params).log_value;
    double log_b = fbnorm::norm_const(shifted).log_value;
    // e^{c} C(theta + cI, gamma) = C(theta, gamma)
    CHECK(std::abs(c + log_b - log_a) < 1e-8);
  }
}
