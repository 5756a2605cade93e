// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/errors.hpp"

namespace photomux {

DomainError::DomainError(const std::string& what) : std::invalid_argument(what) {}
ConfigurationError::ConfigurationError(const std::string& what) : std::invalid_argument(what) {}
NumericalError::NumericalError(const std::string& what) : std::runtime_error(what) {}
UsageError::UsageError(const std::string& what) : std::logic_error(what) {}

}  // namespace photomux
