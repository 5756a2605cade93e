// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/output_distribution.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <type_traits>
#include <variant>
#include <cmath>
#include <numeric>

#include "photomux/errors.hpp"

namespace photomux {
namespace {

std::string shortest(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void check_tolerance(double tolerance) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw DomainError("tolerance must be positive and finite");
  }
}

void check_mean(double total_mean_pairs) {
  if (!std::isfinite(total_mean_pairs) || total_mean_pairs < 0.0) {
    throw DomainError("total mean pair number must be finite and non-negative");
  }
}

}  // namespace

void validate(const MultiplexerSpec& spec) {
  validate(spec.loss);
  validate_units(spec.loss, spec.units);
  if (!(spec.detector_efficiency >= 0.0 && spec.detector_efficiency <= 1.0)) {
    throw DomainError("detector efficiency must lie in [0, 1]");
  }
  check_mean(spec.total_mean_pairs);
}

std::string fingerprint(const MultiplexerSpec& spec) {
  std::string out = "scheme=";
  out += scheme_name(spec.loss);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SpatialLoss>) out += ";V_R=" + shortest(m.router);
        if constexpr (std::is_same_v<T, CavityLoss>) out += ";V_c=" + shortest(m.cavity);
        if constexpr (std::is_same_v<T, BulkTimeLoss>) {
          out += ";V_r=" + shortest(m.branch_used);
          out += ";V_r0=" + shortest(m.branch_bypassed);
          out += ";V_t=" + shortest(m.propagation);
        }
        out += ";V_b=" + shortest(m.generic);
      },
      spec.loss);
  out += ";V_D=" + shortest(spec.detector_efficiency);
  out += ";N=" + std::to_string(spec.units);
  out += ";lambda=" + shortest(spec.total_mean_pairs);
  out += ";law=";
  out += to_string(spec.law);
  return out;
}

std::vector<double> transmissions(const LossModel& model, std::uint64_t units) {
  validate(model);
  validate_units(model, units);
  std::vector<double> v(units);
  for (std::uint64_t n = 1; n <= units; ++n) v[n - 1] = transmission(model, units, n);
  return v;
}

DistributionEvaluator::DistributionEvaluator(LossModel loss, double detector_efficiency,
                                             std::uint64_t units, PairLaw law)
    : loss_(std::move(loss)),
      detector_efficiency_(detector_efficiency),
      units_(units),
      law_(law) {
  validate(spec(0.0));
  transmission_ = transmissions(loss_, units_);
}

MultiplexerSpec DistributionEvaluator::spec(double total_mean_pairs) const {
  return MultiplexerSpec{loss_, detector_efficiency_, units_, total_mean_pairs, law_};
}

std::vector<double> DistributionEvaluator::accumulate(double total_mean_pairs, double tolerance,
                                                      std::size_t columns) const {
  check_tolerance(tolerance);
  check_mean(total_mean_pairs);
  const auto n_units = static_cast<double>(units_);

  // Missing click mass per unit is amplified by at most sum_n p^(n-1) <= N.
  const PairSourceLaw unit_law{law_, total_mean_pairs / n_units};
  const HeraldedUnitDistribution unit =
      apply_detector(unit_law, detector_efficiency_, tolerance / (10.0 * n_units));

  const std::size_t cols = std::min(columns, unit.j_max + 1);
  std::vector<double> result(cols, 0.0);
  std::vector<double> row(cols, 0.0);     // binomial pmf of j trials, columns < cols
  std::vector<double> thinned(cols, 0.0);  // sum_j p_click[j] * Binom(j, V)(i)

  const double silent = unit.p_no_click;
  const double cutoff = tolerance / 10.0;
  double prefactor = 1.0;  // silent^(n-1)
  double last_v = std::numeric_limits<double>::quiet_NaN();

  for (std::uint64_t n = 0; n < units_; ++n) {
    const double v = transmission_[n];
    if (!(v == last_v)) {
      // Pascal recurrence keeps V in {0, 1} exact and never forms
      // factorials.
      std::fill(row.begin(), row.end(), 0.0);
      std::fill(thinned.begin(), thinned.end(), 0.0);
      row[0] = 1.0;
      const double lose = 1.0 - v;
      for (std::size_t j = 1; j <= unit.j_max; ++j) {
        const std::size_t top = std::min(j, cols - 1);
        for (std::size_t i = top; i >= 1; --i) row[i] = lose * row[i] + v * row[i - 1];
        row[0] *= lose;
        const double pj = unit.p_click[j];
        for (std::size_t i = 0; i <= top; ++i) thinned[i] += pj * row[i];
      }
      last_v = v;
    }
    for (std::size_t i = 0; i < cols; ++i) result[i] += prefactor * thinned[i];
    prefactor *= silent;
    // Units beyond this one carry at most `prefactor` of the total mass.
    if (prefactor < cutoff) break;
  }
  result[0] += std::pow(silent, n_units);

  for (double p : result) {
    if (!std::isfinite(p)) throw NumericalError("non-finite output probability");
  }
  return result;
}

OutputDistribution DistributionEvaluator::distribution(double total_mean_pairs,
                                                       double tolerance) const {
  std::vector<double> p =
      accumulate(total_mean_pairs, tolerance, std::numeric_limits<std::size_t>::max());

  double kept = std::accumulate(p.begin(), p.end(), 0.0);
  double residual = 1.0 - kept;
  while (p.size() > 1 && (p.back() == 0.0 || residual + p.back() < tolerance)) {
    residual += p.back();
    p.pop_back();
  }

  OutputDistribution out;
  out.i_max = p.size() - 1;
  out.residual_mass = residual;
  out.probabilities = std::move(p);
  out.spec_fingerprint = fingerprint(spec(total_mean_pairs));
  return out;
}

double DistributionEvaluator::single_photon(double total_mean_pairs, double tolerance) const {
  const std::vector<double> p = accumulate(total_mean_pairs, tolerance, 2);
  return p.size() > 1 ? p[1] : 0.0;
}

OutputDistribution output_distribution(const MultiplexerSpec& spec, double tolerance) {
  validate(spec);
  check_tolerance(tolerance);
  return DistributionEvaluator(spec.loss, spec.detector_efficiency, spec.units, spec.law)
      .distribution(spec.total_mean_pairs, tolerance);
}

double single_photon_probability(const MultiplexerSpec& spec, double tolerance) {
  validate(spec);
  check_tolerance(tolerance);
  return DistributionEvaluator(spec.loss, spec.detector_efficiency, spec.units, spec.law)
      .single_photon(spec.total_mean_pairs, tolerance);
}

}  // namespace photomux
