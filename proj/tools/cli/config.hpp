// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "photomux/loss_models.hpp"
#include "photomux/optimizer.hpp"
#include "photomux/output_distribution.hpp"

namespace photomux::cli {

/// Resolved run configuration.  Built from an INI-style file and/or
/// `section.key=value` overrides; every key is optional.
///
///   tolerance = 1e-10
///   [scheme]     type = ideal|spatial|cavity|bulk, V_b, V_R, V_c, V_r, V_r0, V_t
///   [detector]   efficiency, law = poisson|thermal
///   [units]      N | m | m_min, m_max | N_min, N_max
///   [lambda]     value | min, max, grid_points, refine_tolerance, multimodal_guard
///   [output]     path, format = csv, paper_precision
///   [simulation] trials, seed, z, perturb, max_recorded_photons
struct RunConfig {
  std::string scheme = "ideal";
  std::map<std::string, double> scheme_params;

  double detector_efficiency = 1.0;
  PairLaw law = PairLaw::Poisson;

  std::optional<std::uint64_t> units;
  std::optional<unsigned> levels;
  std::optional<unsigned> levels_min;
  std::optional<unsigned> levels_max;
  std::optional<std::uint64_t> units_min;
  std::optional<std::uint64_t> units_max;

  std::optional<double> lambda;
  LambdaSearchConfig search;

  double tolerance = kDefaultTolerance;

  std::string output_path;  ///< empty: standard output
  std::string output_format = "csv";
  bool paper_precision = false;

  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  double z = 3.0;
  bool perturb = false;
  std::size_t max_recorded_photons = 64;

  /// Throws ConfigurationError naming the key if the scheme is inconsistent.
  LossModel loss_model() const;
  /// Fixed N from `N` or `m`; empty if neither is set.
  std::optional<std::uint64_t> fixed_units() const;
  /// Units to scan for `optimize`: an explicit range, the fixed N, or the
  /// scheme default (2^1..2^15 spatial/bulk, 1..64 cavity, 2^0..2^14 ideal).
  std::vector<std::uint64_t> unit_scan() const;
  /// Spec at the fixed N and lambda; throws ConfigurationError if missing.
  MultiplexerSpec fixed_spec() const;
  LambdaSearchConfig search_config() const;
};

/// Apply one `section.key = value` setting (section empty for top level).
/// Throws ConfigurationError for unknown keys or malformed values.
void apply_setting(RunConfig& cfg, const std::string& section, const std::string& key,
                   const std::string& value);

/// Apply `section.key=value`.
void apply_override(RunConfig& cfg, const std::string& assignment);

void load_config(RunConfig& cfg, std::istream& in);
void load_config_file(RunConfig& cfg, const std::string& path);

/// Final domain checks shared by every command.
void validate(const RunConfig& cfg);

/// INI text that reproduces `cfg` when loaded.
std::string to_ini(const RunConfig& cfg);

}  // namespace photomux::cli
