// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

namespace fbnorm {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace fbnorm
