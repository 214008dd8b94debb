// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstddef>
#include <functional>

namespace fbnorm {

/// Number of worker threads to use: the FBNORM_THREADS environment
/// variable if set to a positive integer, otherwise the hardware
/// concurrency (at least 1). Read on every call so tests can vary it.
unsigned max_threads();

/// Run body(chunk_index) for chunk_index in [0, n_chunks) across up to
/// max_threads() workers pulling from a shared atomic counter. The body
/// must be safe to call concurrently for distinct indices. Exceptions
/// thrown by the body are rethrown on the calling thread (first one wins).
void parallel_chunks(std::size_t n_chunks,
                     const std::function<void(std::size_t)>& body);

}  // namespace fbnorm
