// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "photomux/optimizer.hpp"

namespace photomux::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfigError = 2,
  kExitVerificationFailed = 3,
  kExitNumericalError = 4,
};

struct CommandResult {
  CsvReport report;
  int exit_code = kExitOk;
};

CommandResult cmd_dist(const RunConfig& cfg);
CommandResult cmd_optimize(const RunConfig& cfg);
CommandResult cmd_reproduce(const std::string& target, const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

/// Metadata shared by every report.
void add_common_metadata(CsvReport& report, const std::string& command, const RunConfig& cfg);

/// Column names and cells of one optimum row; shared by optimize and
/// reproduce so both print identical numbers.
std::vector<std::string> optimum_columns();
std::vector<CsvCell> optimum_cells(const OptimizationResult& r);
std::string optimum_flags(const OptimizationResult& r, bool range_edge);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photomux::cli
