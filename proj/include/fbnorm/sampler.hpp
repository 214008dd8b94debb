// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fbnorm/errors.hpp"
#include "fbnorm/params.hpp"

namespace fbnorm {

/// Rejection sampling could not reach the requested sample count within
/// the proposal budget; rate() is the empirical acceptance rate observed.
class LowAcceptanceError : public Error {
 public:
  LowAcceptanceError(const std::string& what, double rate)
      : Error(what), rate_(rate) {}
  double rate() const { return rate_; }

 private:
  double rate_;
};

/// n unit-norm rows drawn from the requested distribution.
struct SampleBatch {
  Eigen::MatrixXd X;
  double acceptance_rate = 1.0;
  std::uint64_t seed = 0;
};

/// i.i.d. uniform points on S^{p-1} via normalized standard normals.
/// Deterministic in (p, n, seed) regardless of thread count.
SampleBatch sample_uniform_sphere(std::size_t p, std::size_t n,
                                  std::uint64_t seed);

/// Rejection sampling of the Fisher-Bingham density: uniform proposals x
/// accepted with probability exp(g(x) - M), where g is the density
/// exponent and M = -min theta + ||gamma||_2 bounds it on the sphere.
/// Parameters are shift-normalized internally. Accepted rows are kept in
/// proposal order, so the batch is deterministic in (params, n, seed).
/// Throws LowAcceptanceError if n rows are not accepted within max_tries
/// proposals.
SampleBatch sample_fb(const CanonicalParams& params, std::size_t n,
                      std::uint64_t seed,
                      std::uint64_t max_tries = 5'000'000'000ULL);

}  // namespace fbnorm
