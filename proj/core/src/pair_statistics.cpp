// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/pair_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "photomux/errors.hpp"

namespace photomux {
namespace {

// Hard stop for the series length.  A thermal law with mean ~1e5 at the
// default tolerance needs a few million terms; beyond that the caller is
// outside any regime this engine is meant for.
constexpr std::uint64_t kMaxSeriesTerms = 50'000'000;

void check_law(const PairSourceLaw& law) {
  if (!std::isfinite(law.mean_per_unit) || law.mean_per_unit < 0.0) {
    throw DomainError("pair law mean must be finite and non-negative, got " +
                      std::to_string(law.mean_per_unit));
  }
}

double log_pmf(const PairSourceLaw& law, double k) {
  const double mu = law.mean_per_unit;
  switch (law.kind) {
    case PairLaw::Poisson:
      return k * std::log(mu) - mu - std::lgamma(k + 1.0);
    case PairLaw::Thermal:
      return k * (std::log(mu) - std::log1p(mu)) - std::log1p(mu);
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(PairLaw law) {
  switch (law) {
    case PairLaw::Poisson:
      return "poisson";
    case PairLaw::Thermal:
      return "thermal";
  }
  return "unknown";
}

double pair_pmf(const PairSourceLaw& law, std::uint64_t k) {
  check_law(law);
  if (law.mean_per_unit == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(log_pmf(law, static_cast<double>(k)));
}

double pair_tail_bound(const PairSourceLaw& law, std::uint64_t k) {
  check_law(law);
  const double mu = law.mean_per_unit;
  if (mu == 0.0) return 0.0;
  const double next = static_cast<double>(k) + 1.0;
  switch (law.kind) {
    case PairLaw::Poisson: {
      // P(K > k) <= pmf(k+1) * sum_t (mu/(k+2))^t
      const double ratio = mu / (next + 1.0);
      if (ratio >= 1.0) return 1.0;
      return std::min(1.0, std::exp(log_pmf(law, next)) / (1.0 - ratio));
    }
    case PairLaw::Thermal:
      return std::exp(next * (std::log(mu) - std::log1p(mu)));
  }
  return 1.0;
}

double HeraldedUnitDistribution::total_click() const {
  return std::accumulate(p_click.begin(), p_click.end(), 0.0);
}

HeraldedUnitDistribution apply_detector(const PairSourceLaw& law, double detector_efficiency,
                                        double tolerance) {
  check_law(law);
  if (!(detector_efficiency >= 0.0 && detector_efficiency <= 1.0)) {
    throw DomainError("detector efficiency must lie in [0, 1], got " +
                      std::to_string(detector_efficiency));
  }
  if (!(tolerance > 0.0)) {
    throw DomainError("tolerance must be positive, got " + std::to_string(tolerance));
  }

  HeraldedUnitDistribution out;
  const double mu = law.mean_per_unit;
  if (mu == 0.0) return out;

  const double miss = 1.0 - detector_efficiency;
  double miss_pow = 1.0;  // miss^k
  out.p_no_click = 0.0;
  const auto floor_mean = static_cast<std::uint64_t>(std::floor(mu));
  for (std::uint64_t k = 0;; ++k) {
    const double pk = pair_pmf(law, k);
    out.p_no_click += pk * miss_pow;
    if (k > 0) out.p_click.push_back(pk * (1.0 - miss_pow));
    miss_pow *= miss;

    if (k >= floor_mean) {
      const double tail = pair_tail_bound(law, k);
      if (tail < tolerance) {
        out.j_max = static_cast<std::size_t>(k);
        out.truncation_mass = tail;
        break;
      }
    }
    if (k > kMaxSeriesTerms) {
      throw NumericalError("pair series did not converge within the term limit");
    }
  }
  return out;
}

}  // namespace photomux
