// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "photomux/errors.hpp"

namespace photomux::cli {
namespace {

std::string escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::string format_real(double value, bool paper_precision) {
  return paper_precision ? fmt::format("{:.4g}", value) : fmt::format("{:.17g}", value);
}

void CsvReport::add_metadata(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void CsvReport::write(std::ostream& out, bool paper_precision) const {
  for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << escape(columns[c]);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      std::visit(
          [&](const auto& cell) {
            using T = std::decay_t<decltype(cell)>;
            if constexpr (std::is_same_v<T, std::int64_t>) out << cell;
            if constexpr (std::is_same_v<T, double>) out << format_real(cell, paper_precision);
            if constexpr (std::is_same_v<T, std::string>) out << escape(cell);
          },
          row[c]);
    }
    out << '\n';
  }
}

std::string CsvReport::str(bool paper_precision) const {
  std::ostringstream out;
  write(out, paper_precision);
  return out.str();
}

ParsedCsv parse_csv(std::istream& in) {
  ParsedCsv parsed;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      if (header) throw UsageError("metadata line after CSV header");
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) {
        parsed.metadata.emplace_back(line.substr(2), "");
      } else {
        parsed.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      }
    } else if (!header) {
      parsed.columns = split_row(line);
      header = true;
    } else {
      parsed.rows.push_back(split_row(line));
    }
  }
  return parsed;
}

}  // namespace photomux::cli
