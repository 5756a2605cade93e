// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "photomux/output_distribution.hpp"

namespace photomux {

/// Search over the total mean pair number lambda.
///
/// A logarithmic grid of `coarse_grid_points` values spans
/// [lambda_min, lambda_max]; each grid local maximum that is refined gets a
/// golden-section search inside its neighbouring grid points until the
/// bracket is narrower than `refine_tolerance`.  With `multimodal_guard`
/// every interior grid maximum is refined, otherwise only the best one.
struct LambdaSearchConfig {
  double lambda_min = 1e-3;
  /// Unset means 100 * max(1, 1 / V_D).
  std::optional<double> lambda_max;
  std::size_t coarse_grid_points = 256;
  double refine_tolerance = 1e-4;
  bool multimodal_guard = true;
  /// Series tolerance passed to the distribution engine.
  double tolerance = kDefaultTolerance;

  double resolved_lambda_max(double detector_efficiency) const;
};

/// Throws DomainError when the config violates its invariants.
void validate(const LambdaSearchConfig& cfg, double detector_efficiency);

struct LocalMaximum {
  double lambda = 0.0;
  double p1 = 0.0;
};

struct OptimizationResult {
  std::uint64_t units = 1;
  std::optional<unsigned> levels;  ///< log2(N) for binary-cascade schemes
  double lambda_opt = 0.0;
  double p1_max = 0.0;
  double p0_at_opt = 0.0;
  /// Refined local maxima in increasing lambda; one entry without the guard.
  std::vector<LocalMaximum> local_maxima;
  std::size_t evaluations = 0;
  /// The best grid point was an endpoint of [lambda_min, lambda_max].
  bool at_boundary = false;
};

OptimizationResult optimize_lambda(const DistributionEvaluator& evaluator,
                                   const LambdaSearchConfig& cfg = {});

/// `spec_template.total_mean_pairs` is ignored.
OptimizationResult optimize_lambda(const MultiplexerSpec& spec_template,
                                   const LambdaSearchConfig& cfg = {});

struct UnitsOptimizationResult {
  OptimizationResult best;
  /// One entry per scanned N, ascending.
  std::vector<OptimizationResult> per_unit;
  /// The best N is the smallest or largest of a multi-element range.
  bool at_range_edge = false;
};

/// Runs optimize_lambda for each N and keeps the largest P_1; ties go to the
/// smaller N.  `workers` = 0 picks the hardware concurrency.  The result
/// does not depend on the worker count.
UnitsOptimizationResult optimize_units(const LossModel& loss, double detector_efficiency,
                                       std::span<const std::uint64_t> unit_range,
                                       const LambdaSearchConfig& cfg = {},
                                       PairLaw law = PairLaw::Poisson, unsigned workers = 0);

/// {2^m_min, ..., 2^m_max}
std::vector<std::uint64_t> power_of_two_range(unsigned m_min, unsigned m_max);

/// {first, ..., last}
std::vector<std::uint64_t> linear_range(std::uint64_t first, std::uint64_t last);

struct AsymptoticPoint {
  double lambda_over_units = 0.0;
  double p1 = 0.0;
};

/// P_1 of a lossless-detector spatial multiplexer with 2^m units at the
/// per-unit mean V_R^-m.  Tends to 1/e as m grows.
AsymptoticPoint asymptotic_check_spatial(double router_transmission, unsigned levels,
                                         double tolerance = kDefaultTolerance);

}  // namespace photomux
