// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include <doctest.h>
