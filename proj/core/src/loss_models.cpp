// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/loss_models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "photomux/errors.hpp"

namespace photomux {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_probability(double value, std::string_view name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
  }
}

}  // namespace

std::string_view scheme_name(const LossModel& model) {
  return std::visit(Overloaded{[](const IdealLoss&) { return std::string_view("ideal"); },
                               [](const SpatialLoss&) { return std::string_view("spatial"); },
                               [](const CavityLoss&) { return std::string_view("cavity"); },
                               [](const BulkTimeLoss&) { return std::string_view("bulk"); }},
                    model);
}

bool requires_power_of_two(const LossModel& model) {
  return std::holds_alternative<SpatialLoss>(model) || std::holds_alternative<BulkTimeLoss>(model);
}

void validate(const LossModel& model) {
  std::visit(Overloaded{[](const IdealLoss& m) { check_probability(m.generic, "V_b"); },
                        [](const SpatialLoss& m) {
                          check_probability(m.router, "V_R");
                          check_probability(m.generic, "V_b");
                        },
                        [](const CavityLoss& m) {
                          check_probability(m.cavity, "V_c");
                          check_probability(m.generic, "V_b");
                        },
                        [](const BulkTimeLoss& m) {
                          check_probability(m.branch_used, "V_r");
                          check_probability(m.branch_bypassed, "V_r0");
                          check_probability(m.propagation, "V_t");
                          check_probability(m.generic, "V_b");
                        }},
             model);
}

void validate_units(const LossModel& model, std::uint64_t units) {
  if (units == 0) throw DomainError("number of units must be at least 1");
  if (requires_power_of_two(model) && !is_power_of_two(units)) {
    throw ConfigurationError(std::string(scheme_name(model)) +
                             " scheme needs a power-of-two unit count, got " +
                             std::to_string(units));
  }
}

unsigned exact_log2(std::uint64_t power_of_two) {
  return static_cast<unsigned>(std::countr_zero(power_of_two));
}

unsigned hamming_weight(std::uint64_t x) { return static_cast<unsigned>(std::popcount(x)); }

double transmission(const LossModel& model, std::uint64_t units, std::uint64_t n) {
  validate_units(model, units);
  if (n < 1 || n > units) {
    throw DomainError("unit index " + std::to_string(n) + " outside [1, " +
                      std::to_string(units) + "]");
  }
  const std::uint64_t wait = units - n;
  return std::visit(
      Overloaded{
          [](const IdealLoss& m) { return m.generic; },
          [&](const SpatialLoss& m) {
            return std::pow(m.router, static_cast<double>(exact_log2(units))) * m.generic;
          },
          [&](const CavityLoss& m) {
            return std::pow(m.cavity, static_cast<double>(wait)) * m.generic;
          },
          [&](const BulkTimeLoss& m) {
            const unsigned levels = exact_log2(units);
            const unsigned used = hamming_weight(wait);
            // Propagation exponent is (N - n) / N, not (N - n) / (N - 1).
            const double medium = static_cast<double>(wait) / static_cast<double>(units);
            return std::pow(m.branch_used, static_cast<double>(used)) *
                   std::pow(m.branch_bypassed, static_cast<double>(levels - used)) *
                   std::pow(m.propagation, medium) * m.generic;
          }},
      model);
}

double minimal_period(const TimingParameters& t) {
  for (double d : {t.observation, t.control_delay, t.pass_through, t.detector_dead}) {
    if (!(d >= 0.0)) throw DomainError("durations must be non-negative");
  }
  return std::max(t.observation + t.control_delay + t.pass_through,
                  t.observation + t.detector_dead);
}

}  // namespace photomux
