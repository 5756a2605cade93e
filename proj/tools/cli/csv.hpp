// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace photomux::cli {

/// Empty cells are written as nothing between separators.
using CsvCell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// CSV document with `# key: value` metadata lines ahead of the header.
///
/// Reals are written with 17 significant digits so re-parsing gives the same
/// doubles; `paper_precision` switches to 4 significant digits for display.
struct CsvReport {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<CsvCell>> rows;

  void add_metadata(std::string key, std::string value);
  void write(std::ostream& out, bool paper_precision = false) const;
  std::string str(bool paper_precision = false) const;
};

/// Parsed form of a written report, used to check round trips.
struct ParsedCsv {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

ParsedCsv parse_csv(std::istream& in);

std::string format_real(double value, bool paper_precision = false);

}  // namespace photomux::cli
