// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace photomux {

/// A parameter lies outside its mathematical domain (negative mean,
/// probability outside [0, 1], non-positive tolerance, index out of range).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what);
};

/// A structurally invalid configuration, e.g. a non-power-of-two unit count
/// for a scheme built from binary cascades.
class ConfigurationError : public std::invalid_argument {
 public:
  explicit ConfigurationError(const std::string& what);
};

/// Evaluation produced a non-finite value.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what);
};

/// Inconsistent use of the API, e.g. comparing distributions of different
/// specs.
class UsageError : public std::logic_error {
 public:
  explicit UsageError(const std::string& what);
};

}  // namespace photomux
