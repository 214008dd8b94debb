// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include "fbnorm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fbnorm/parallel.hpp"
#include "fbnorm/rng.hpp"

namespace fbnorm {

namespace {

// Proposals are processed in fixed chunks, and chunks in fixed waves, so
// the accepted set depends only on (params, seed) no matter how many
// threads execute a wave.
constexpr std::uint64_t kChunk = 4096;
constexpr std::size_t kWaveChunks = 256;

void fill_sphere_point(const CounterRng& rng, std::uint64_t counter_base,
                       std::size_t p, double* x) {
  std::size_t npairs = (p + 1) / 2;
  for (std::size_t j = 0; j < npairs; ++j) {
    double z0, z1;
    rng.normal_pair(counter_base + 2 * j, z0, z1);
    x[2 * j] = z0;
    if (2 * j + 1 < p) x[2 * j + 1] = z1;
  }
  double norm2 = 0.0;
  for (std::size_t i = 0; i < p; ++i) norm2 += x[i] * x[i];
  double inv = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < p; ++i) x[i] *= inv;
}

}  // namespace

SampleBatch sample_uniform_sphere(std::size_t p, std::size_t n,
                                  std::uint64_t seed) {
  if (p < 2) throw DomainError("sphere dimension p must be at least 2");
  if (n < 1) throw DomainError("sample count must be at least 1");

  SampleBatch batch;
  batch.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  batch.acceptance_rate = 1.0;
  batch.seed = seed;

  const CounterRng rng(seed, 0);
  const std::size_t npairs = (p + 1) / 2;
  const std::size_t rows_per_chunk = kChunk;
  const std::size_t n_chunks = (n + rows_per_chunk - 1) / rows_per_chunk;

  parallel_chunks(n_chunks, [&](std::size_t c) {
    std::vector<double> x(p);
    std::size_t lo = c * rows_per_chunk;
    std::size_t hi = std::min(lo + rows_per_chunk, n);
    for (std::size_t k = lo; k < hi; ++k) {
      fill_sphere_point(rng, static_cast<std::uint64_t>(k) * (2 * npairs), p,
                        x.data());
      for (std::size_t i = 0; i < p; ++i) {
        batch.X(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
            x[i];
      }
    }
  });
  return batch;
}

SampleBatch sample_fb(const CanonicalParams& params, std::size_t n,
                      std::uint64_t seed, std::uint64_t max_tries) {
  validate_params(params, 2);
  if (n < 1) throw DomainError("sample count must be at least 1");

  // Sampling happens in the canonical gauge (min theta = 0, gamma >= 0),
  // where the exponent bound is M = ||gamma||; the recorded sign flips
  // reflect the accepted points back afterwards.
  ShiftNormalized sn = shift_normalize(params);
  const std::size_t p = sn.params.p();
  double m_bound = 0.0;
  for (double g : sn.params.gamma) m_bound += g * g;
  m_bound = std::sqrt(m_bound);

  const CounterRng rng(seed, 0);
  const std::size_t npairs = (p + 1) / 2;
  const std::uint64_t counters_per = 2 * npairs + 1;

  SampleBatch batch;
  batch.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  batch.seed = seed;

  std::size_t collected = 0;
  std::uint64_t next_proposal = 0;       // first proposal of the next wave
  std::uint64_t last_accept_index = 0;   // proposal index of the last kept row

  // Per-chunk accepted rows, flattened p-per-row, refilled each wave.
  std::vector<std::vector<double>> wave_rows(kWaveChunks);
  std::vector<std::vector<std::uint64_t>> wave_idx(kWaveChunks);

  while (collected < n && next_proposal < max_tries) {
    std::uint64_t wave_budget =
        std::min<std::uint64_t>(max_tries - next_proposal,
                                kChunk * kWaveChunks);
    std::size_t chunks_in_wave =
        static_cast<std::size_t>((wave_budget + kChunk - 1) / kChunk);

    parallel_chunks(chunks_in_wave, [&](std::size_t c) {
      std::vector<double>& rows = wave_rows[c];
      std::vector<std::uint64_t>& idx = wave_idx[c];
      rows.clear();
      idx.clear();
      std::vector<double> x(p);
      std::uint64_t lo = next_proposal + static_cast<std::uint64_t>(c) * kChunk;
      std::uint64_t hi = std::min(lo + kChunk, next_proposal + wave_budget);
      for (std::uint64_t k = lo; k < hi; ++k) {
        std::uint64_t base = k * counters_per;
        fill_sphere_point(rng, base, p, x.data());
        double g = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
          g += -sn.params.theta[i] * x[i] * x[i] + sn.params.gamma[i] * x[i];
        }
        double u = rng.uniform(base + 2 * npairs);
        if (std::log(u) < g - m_bound) {
          rows.insert(rows.end(), x.begin(), x.end());
          idx.push_back(k);
        }
      }
    });

    for (std::size_t c = 0; c < chunks_in_wave && collected < n; ++c) {
      const std::vector<double>& rows = wave_rows[c];
      const std::vector<std::uint64_t>& idx = wave_idx[c];
      for (std::size_t r = 0; r * p < rows.size() && collected < n; ++r) {
        for (std::size_t i = 0; i < p; ++i) {
          batch.X(static_cast<Eigen::Index>(collected),
                  static_cast<Eigen::Index>(i)) =
              sn.sign_flips[i] * rows[r * p + i];
        }
        last_accept_index = idx[r];
        ++collected;
      }
    }
    next_proposal += wave_budget;
  }

  if (collected < n) {
    double rate = static_cast<double>(collected) /
                  static_cast<double>(next_proposal);
    throw LowAcceptanceError(
        "accepted only " + std::to_string(collected) + " of " +
            std::to_string(n) + " samples within " +
            std::to_string(next_proposal) +
            " proposals (empirical acceptance rate " + std::to_string(rate) +
            "); consider a smaller ||gamma|| or a larger budget",
        rate);
  }

  batch.acceptance_rate = static_cast<double>(n) /
                          static_cast<double>(last_accept_index + 1);
  return batch;
}

}  // namespace fbnorm
