// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

namespace photomux {

/// Unit-independent loss only.
struct IdealLoss {
  double generic = 1.0;  ///< V_b
};

/// Cascaded router tree: every photon crosses log2(N) routers.
struct SpatialLoss {
  double router = 1.0;   ///< V_R, one router
  double generic = 1.0;  ///< V_b
};

/// Storage cavity: a photon heralded in window n circulates N - n round trips.
struct CavityLoss {
  double cavity = 1.0;   ///< V_c, one round trip
  double generic = 1.0;  ///< V_b
};

/// Binary delay line with log2(N) switchable branches.
struct BulkTimeLoss {
  double branch_used = 1.0;      ///< V_r
  double branch_bypassed = 1.0;  ///< V_r0
  double propagation = 1.0;      ///< V_t, through the full delay medium
  double generic = 1.0;          ///< V_b
};

using LossModel = std::variant<IdealLoss, SpatialLoss, CavityLoss, BulkTimeLoss>;

std::string_view scheme_name(const LossModel& model);

/// True for schemes whose unit count must be a power of two.
bool requires_power_of_two(const LossModel& model);

/// Throws DomainError if any transmission lies outside [0, 1].
void validate(const LossModel& model);

/// Throws DomainError for units == 0 and ConfigurationError for a
/// non-power-of-two count where the scheme requires one.
void validate_units(const LossModel& model, std::uint64_t units);

constexpr bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// log2 of a power of two.
unsigned exact_log2(std::uint64_t power_of_two);

unsigned hamming_weight(std::uint64_t x);

/// Probability that a signal photon heralded in unit `n` (1-based) of `units`
/// reaches the output.
double transmission(const LossModel& model, std::uint64_t units, std::uint64_t n);

/// Durations in seconds.
struct TimingParameters {
  double observation = 0.0;      ///< T = N * window
  double control_delay = 0.0;    ///< tau
  double pass_through = 0.0;     ///< tau_d
  double detector_dead = 0.0;    ///< tau_0
};

/// Shortest achievable source period for the bulk delay scheme.
double minimal_period(const TimingParameters& t);

}  // namespace photomux
