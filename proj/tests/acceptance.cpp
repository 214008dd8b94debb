// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

int main() { return 0; }
