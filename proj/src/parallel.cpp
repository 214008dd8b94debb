// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include "fbnorm/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fbnorm {

unsigned max_threads() {
  if (const char* env = std::getenv("FBNORM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_chunks(std::size_t n_chunks,
                     const std::function<void(std::size_t)>& body) {
  if (n_chunks == 0) return;
  unsigned nt = max_threads();
  if (nt > n_chunks) nt = static_cast<unsigned>(n_chunks);

  if (nt <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_chunks) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n_chunks);
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(nt - 1);
  for (unsigned t = 1; t < nt; ++t) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fbnorm
