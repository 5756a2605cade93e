// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "photomux/loss_models.hpp"
#include "photomux/pair_statistics.hpp"

namespace photomux {

inline constexpr double kDefaultTolerance = 1e-10;

/// A multiplexed source: N units, each fed a pair law of mean
/// total_mean_pairs / N, heralded by one detector and routed through `loss`.
struct MultiplexerSpec {
  LossModel loss = IdealLoss{};
  double detector_efficiency = 1.0;  ///< V_D
  std::uint64_t units = 1;           ///< N
  double total_mean_pairs = 0.0;     ///< lambda
  PairLaw law = PairLaw::Poisson;

  PairSourceLaw unit_law() const { return {law, total_mean_pairs / static_cast<double>(units)}; }
};

/// Throws DomainError / ConfigurationError if the spec is not evaluable.
void validate(const MultiplexerSpec& spec);

/// Canonical text identifying a spec; equal specs give equal strings.
std::string fingerprint(const MultiplexerSpec& spec);

/// Output photon-number distribution for one source period.
struct OutputDistribution {
  std::vector<double> probabilities;  ///< P_0 .. P_imax
  std::size_t i_max = 0;
  /// 1 - sum(probabilities): dropped high-i bins plus series truncation.
  double residual_mass = 0.0;
  std::string spec_fingerprint;

  double at(std::size_t i) const { return i < probabilities.size() ? probabilities[i] : 0.0; }
};

/// V_n for n = 1..N, element n-1.
std::vector<double> transmissions(const LossModel& model, std::uint64_t units);

/// Evaluates the output statistics of one (loss, detector, N, law) family
/// at arbitrary total mean pair numbers.  The per-unit transmissions are
/// computed once at construction, so sweeping lambda is cheap.
///
/// The first unit that clicks supplies the output; the prefactor
/// (P^(0))^(n-1) in the n-sum is exactly that priority rule.
class DistributionEvaluator {
 public:
  DistributionEvaluator(LossModel loss, double detector_efficiency, std::uint64_t units,
                        PairLaw law = PairLaw::Poisson);

  OutputDistribution distribution(double total_mean_pairs,
                                  double tolerance = kDefaultTolerance) const;

  /// Same value as distribution(...).at(1), evaluated with the i-sum
  /// restricted to i <= 1.
  double single_photon(double total_mean_pairs, double tolerance = kDefaultTolerance) const;

  MultiplexerSpec spec(double total_mean_pairs) const;
  std::uint64_t units() const { return units_; }
  std::span<const double> unit_transmissions() const { return transmission_; }

 private:
  // Accumulates P_0 .. P_(columns-1); returns the vector (size <= columns).
  std::vector<double> accumulate(double total_mean_pairs, double tolerance,
                                 std::size_t columns) const;

  LossModel loss_;
  double detector_efficiency_;
  std::uint64_t units_;
  PairLaw law_;
  std::vector<double> transmission_;
};

OutputDistribution output_distribution(const MultiplexerSpec& spec,
                                       double tolerance = kDefaultTolerance);

double single_photon_probability(const MultiplexerSpec& spec,
                                 double tolerance = kDefaultTolerance);

}  // namespace photomux
