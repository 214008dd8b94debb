// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <cstdint>

namespace fbnorm {

/// splitmix64 finalizer: a bijective 64-bit mix with good avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: each (seed, stream, counter) triple maps to an
/// independent uniform deviate, so parallel workers can draw from disjoint
/// counter ranges without sharing state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream + 0x853c49e6748fea9bULL))) {}

  /// Uniform in (0, 1): the top 53 bits of the mixed counter, offset by
  /// half an ulp so the result is never exactly zero.
  double uniform(std::uint64_t counter) const {
    std::uint64_t bits = mix64(key_ ^ mix64(counter));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  /// A standard-normal pair via Box-Muller, consuming counters
  /// counter_base and counter_base + 1.
  void normal_pair(std::uint64_t counter_base, double& z0, double& z1) const {
    double u1 = uniform(counter_base);
    double u2 = uniform(counter_base + 1);
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    z0 = r * std::cos(a);
    z1 = r * std::sin(a);
  }

 private:
  std::uint64_t key_;
};

}  // namespace fbnorm
