// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "photomux/output_distribution.hpp"

namespace photomux {

/// Trials are split into fixed chunks of `kTrialsPerChunk`; chunk c draws
/// from an mt19937_64 seeded with seed_seq{seed, c}.  Histograms therefore
/// depend on (spec, trials, seed) only, never on the worker count.
inline constexpr std::uint64_t kTrialsPerChunk = 1u << 16;

struct SimulationConfig {
  MultiplexerSpec spec;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  /// Outputs with more photons are counted in the last bin.
  std::size_t max_recorded_photons = 64;
  unsigned workers = 0;  ///< 0 = hardware concurrency
};

struct EmpiricalDistribution {
  std::vector<std::uint64_t> counts;    ///< counts[i]: trials with i output photons
  std::uint64_t trials = 0;
  std::vector<double> standard_errors;  ///< sqrt(p(1-p)/trials), p the observed frequency
  std::string spec_fingerprint;

  double frequency(std::size_t i) const;
};

/// Brute-force simulation of heralding, first-click priority and photon
/// loss, one period per trial.
EmpiricalDistribution simulate(const SimulationConfig& cfg);

struct BinComparison {
  std::size_t first_photons = 0;  ///< first photon number in the bin
  bool pooled = false;            ///< tail bin holding every low-expectation count
  double analytic = 0.0;
  double empirical = 0.0;
  /// Binomial standard error under the analytic probability.
  double standard_error = 0.0;
  double z_score = 0.0;
  bool pass = true;
};

struct ComparisonReport {
  std::vector<BinComparison> bins;
  bool pass = true;
  std::size_t worst_bin = 0;  ///< index into `bins`
  double worst_z = 0.0;
};

/// Bins whose expected count is below 10 are pooled into a single tail bin.
/// Throws UsageError if the two distributions describe different specs.
ComparisonReport compare_to_analytic(const EmpiricalDistribution& empirical,
                                     const OutputDistribution& analytic, double z = 3.0);

}  // namespace photomux
