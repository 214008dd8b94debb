// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "fbnorm/errors.hpp"

namespace fbnorm {

/// Backtracking line search found no decrease down to the minimum step;
/// the iterate where the search stalled is attached.
class StagnationError : public Error {
 public:
  StagnationError(const std::string& what, Eigen::VectorXd theta,
                  Eigen::VectorXd gamma)
      : Error(what), theta_(std::move(theta)), gamma_(std::move(gamma)) {}
  const Eigen::VectorXd& theta() const { return theta_; }
  const Eigen::VectorXd& gamma() const { return gamma_; }

 private:
  Eigen::VectorXd theta_;
  Eigen::VectorXd gamma_;
};

/// Second-moment matrix, mean vector, and count of a spherical sample.
struct SufficientStats {
  Eigen::MatrixXd A;  // (1/n) sum x xT
  Eigen::VectorXd B;  // (1/n) sum x
  std::size_t n = 0;
};

enum class Optimizer { gradient_descent, quasi_newton };

struct FitInit {
  Eigen::VectorXd theta;
  Eigen::VectorXd gamma;
  Eigen::MatrixXd O;
};

struct FitConfig {
  std::size_t max_iter = 50000;
  double grad_tol = 1e-6;      // sup-norm stopping threshold
  double shrink = 0.5;         // line-search backtracking factor
  double decrease = 1e-4;      // sufficient-decrease (Armijo) constant
  bool optimize_frame = false;
  Optimizer optimizer = Optimizer::gradient_descent;
  std::optional<FitInit> init;
};

struct FitResult {
  Eigen::VectorXd theta_hat;
  Eigen::VectorXd gamma_hat;
  Eigen::MatrixXd O_hat;
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
  bool converged = false;
  double final_grad_norm = 0.0;
};

/// A = mean of x xT, B = mean of x. Rows must be unit within 1e-8;
/// offenders are reported in a DataError.
SufficientStats sufficient_stats(const Eigen::MatrixXd& X);

/// Negative average log-likelihood up to the data-independent constant:
/// log C(theta, gamma) + tr(diag(theta) O A OT) - gammaT (O B).
double neg_avg_log_lik(const Eigen::VectorXd& theta,
                       const Eigen::VectorXd& gamma, const Eigen::MatrixXd& O,
                       const SufficientStats& stats);

/// Gradient of the objective: g_theta_i = C_theta_i/C + (O A OT)_ii,
/// g_gamma_i = C_gamma_i/C - (O B)_i. The theta components always sum to
/// zero (flat gauge direction).
void grad_neg_avg_log_lik(const Eigen::VectorXd& theta,
                          const Eigen::VectorXd& gamma,
                          const Eigen::MatrixXd& O,
                          const SufficientStats& stats,
                          Eigen::VectorXd& g_theta, Eigen::VectorXd& g_gamma);

/// One orthogonal-frame improvement: builds the skew descent generator
/// vhat from the current statistics, line-searches t >= 0 along
/// O(t) = expm(vhat t) O for objective decrease, and returns the best
/// frame with ||vhat||_F (the frame-stationarity measure).
std::pair<Eigen::MatrixXd, double> frame_update(const Eigen::VectorXd& theta,
                                                const Eigen::VectorXd& gamma,
                                                const Eigen::MatrixXd& O,
                                                const SufficientStats& stats);

/// Alternating minimization: a backtracking theta step, a backtracking
/// gamma step, and optionally a frame update per iteration, stopping when
/// the gradient sup-norm (and the frame generator norm, if enabled) falls
/// below grad_tol. The objective trace is non-increasing. Throws
/// StagnationError when a line search cannot make progress.
FitResult fit(const SufficientStats& stats, const FitConfig& config = {});

}  // namespace fbnorm
