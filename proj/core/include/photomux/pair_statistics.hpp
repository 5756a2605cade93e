// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace photomux {

enum class PairLaw { Poisson, Thermal };

std::string_view to_string(PairLaw law);

/// Photon-pair number distribution arriving in one multiplexed unit.
///
/// `mean_per_unit` is the total mean pair number divided by the number of
/// units.
struct PairSourceLaw {
  PairLaw kind = PairLaw::Poisson;
  double mean_per_unit = 0.0;
};

/// Probability of exactly `k` pairs in one unit.
///
/// Poisson: mu^k e^-mu / k!.  Thermal (single mode): mu^k / (1+mu)^(k+1).
/// Throws DomainError for a negative or non-finite mean.
double pair_pmf(const PairSourceLaw& law, std::uint64_t k);

/// Upper bound on P(K > k) for the given law.  Exact for the thermal law,
/// a ratio bound for Poisson (valid once k + 2 > mu; returns 1 otherwise).
double pair_tail_bound(const PairSourceLaw& law, std::uint64_t k);

/// Per-unit statistics after a click/no-click heralding detector.
struct HeraldedUnitDistribution {
  /// Probability that the detector stays silent.
  double p_no_click = 1.0;
  /// p_click[j] is the probability that the unit holds exactly j pairs and
  /// the detector clicks.  Index 0 is always 0 and kept for direct indexing.
  std::vector<double> p_click{0.0};
  /// Largest j retained.
  std::size_t j_max = 0;
  /// Upper bound on the pmf mass of all omitted pair numbers j > j_max.
  double truncation_mass = 0.0;

  double click(std::size_t j) const { return j < p_click.size() ? p_click[j] : 0.0; }
  double total_click() const;
};

/// Apply a detector of efficiency `detector_efficiency` to the pair law.
///
/// Both series are cut at the first j_max whose analytic tail bound drops
/// below `tolerance`.  Throws DomainError for an efficiency outside [0, 1]
/// or a non-positive tolerance.
HeraldedUnitDistribution apply_detector(const PairSourceLaw& law, double detector_efficiency,
                                        double tolerance = 1e-12);

}  // namespace photomux
