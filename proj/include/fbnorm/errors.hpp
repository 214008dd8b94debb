// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbnorm {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter values (non-finite entries, bad dimensions,
/// non-positive-definite covariance, contour on the wrong side of a
/// branch point).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quadrature configuration violating one of its constraints; the
/// message names the violated inequality.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data failed validation (e.g. rows not on the unit sphere).
class DataError : public Error {
 public:
  DataError(const std::string& what, std::vector<std::size_t> rows = {})
      : Error(what), rows_(std::move(rows)) {}
  const std::vector<std::size_t>& rows() const { return rows_; }

 private:
  std::vector<std::size_t> rows_;
};

/// A non-finite value appeared during evaluation; node() identifies the
/// offending quadrature node when applicable.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, long node = -1)
      : Error(what), node_(node) {}
  long node() const { return node_; }

 private:
  long node_;
};

/// The quadrature's imaginary-part residual exceeded the accuracy gate,
/// signalling a bad contour or insufficient node count.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double imag_residual() const { return residual_; }

 private:
  double residual_;
};

/// A closed-form evaluation is too ill-conditioned to trust (e.g. the
/// partial-fraction constant with near-duplicate coefficients).
class ConditioningError : public Error {
 public:
  using Error::Error;
};

}  // namespace fbnorm
