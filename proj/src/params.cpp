// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include "fbnorm/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbnorm/errors.hpp"

namespace fbnorm {

void validate_params(const CanonicalParams& params, std::size_t min_p) {
  if (params.theta.size() != params.gamma.size()) {
    throw DomainError("theta and gamma must have equal length (got " +
                      std::to_string(params.theta.size()) + " and " +
                      std::to_string(params.gamma.size()) + ")");
  }
  if (params.theta.size() < min_p) {
    throw DomainError("dimension " + std::to_string(params.theta.size()) +
                      " below minimum " + std::to_string(min_p));
  }
  for (std::size_t i = 0; i < params.theta.size(); ++i) {
    if (!std::isfinite(params.theta[i]) || !std::isfinite(params.gamma[i])) {
      throw DomainError("non-finite parameter entry at index " +
                        std::to_string(i));
    }
  }
}

FrameDecomposition from_mean_covariance(const FullParams& full) {
  const Eigen::Index p = full.sigma.rows();
  if (p < 2 || full.sigma.cols() != p) {
    throw DomainError("sigma must be square with p >= 2");
  }
  if (full.mu.size() != p) {
    throw DomainError("mu length does not match sigma dimension");
  }
  if (!full.sigma.allFinite() || !full.mu.allFinite()) {
    throw DomainError("non-finite entry in mu or sigma");
  }

  double scale = full.sigma.cwiseAbs().maxCoeff();
  double asym = (full.sigma - full.sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0)) {
    throw DomainError("sigma is not symmetric");
  }

  Eigen::MatrixXd sym = 0.5 * (full.sigma + full.sigma.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw DomainError("eigendecomposition of sigma failed");
  }
  if (eig.eigenvalues()(0) <= 0.0) {
    throw DomainError("sigma is not positive definite");
  }

  // Descending eigenvalues give ascending theta; ties keep the solver's
  // original order so an identity covariance maps to the identity frame.
  // Rows of O are the eigenvectors with a deterministic sign (first
  // non-negligible entry positive).
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  for (Eigen::Index r = 0; r < p; ++r) order[static_cast<std::size_t>(r)] = r;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return eig.eigenvalues()(a) > eig.eigenvalues()(b);
                   });

  FrameDecomposition out;
  out.orthogonal.resize(p, p);
  out.canonical.theta.resize(static_cast<std::size_t>(p));
  out.canonical.gamma.resize(static_cast<std::size_t>(p));
  Eigen::VectorXd lambda(p);
  for (Eigen::Index r = 0; r < p; ++r) {
    Eigen::Index src = order[static_cast<std::size_t>(r)];
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    for (Eigen::Index k = 0; k < p; ++k) {
      if (std::abs(v(k)) > 1e-12) {
        if (v(k) < 0.0) v = -v;
        break;
      }
    }
    out.orthogonal.row(r) = v.transpose();
    lambda(r) = eig.eigenvalues()(src);
    out.canonical.theta[static_cast<std::size_t>(r)] = 1.0 / (2.0 * lambda(r));
  }
  Eigen::VectorXd om = out.orthogonal * full.mu;
  for (Eigen::Index r = 0; r < p; ++r) {
    out.canonical.gamma[static_cast<std::size_t>(r)] = om(r) / lambda(r);
  }
  out.log_scale = 0.0;
  return out;
}

ShiftNormalized shift_normalize(const CanonicalParams& params) {
  validate_params(params, 1);
  ShiftNormalized out;
  double shift = *std::min_element(params.theta.begin(), params.theta.end());
  out.shift = shift;
  out.sign_flips.resize(params.p());
  out.params.theta.resize(params.p());
  out.params.gamma.resize(params.p());
  for (std::size_t i = 0; i < params.p(); ++i) {
    out.params.theta[i] = params.theta[i] - shift;
    out.sign_flips[i] = params.gamma[i] < 0.0 ? -1.0 : 1.0;
    out.params.gamma[i] = params.gamma[i] * out.sign_flips[i];
  }
  return out;
}

}  // namespace fbnorm
