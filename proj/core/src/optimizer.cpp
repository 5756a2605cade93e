// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "photomux/errors.hpp"

namespace photomux {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

class CountingObjective {
 public:
  CountingObjective(const DistributionEvaluator& eval, double tolerance)
      : eval_(eval), tolerance_(tolerance) {}

  double operator()(double lambda) {
    ++count_;
    const double p1 = eval_.single_photon(lambda, tolerance_);
    if (!std::isfinite(p1)) {
      throw NumericalError("non-finite P_1 at lambda = " + std::to_string(lambda));
    }
    return p1;
  }

  std::size_t count() const { return count_; }

 private:
  const DistributionEvaluator& eval_;
  double tolerance_;
  std::size_t count_ = 0;
};

LocalMaximum golden_section(CountingObjective& f, double lo, double hi, double resolution) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > resolution) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? LocalMaximum{c, fc} : LocalMaximum{d, fd};
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

double LambdaSearchConfig::resolved_lambda_max(double detector_efficiency) const {
  if (lambda_max) return *lambda_max;
  const double inv = detector_efficiency > 0.0 ? 1.0 / detector_efficiency : 1.0;
  return 100.0 * std::max(1.0, inv);
}

void validate(const LambdaSearchConfig& cfg, double detector_efficiency) {
  const double hi = cfg.resolved_lambda_max(detector_efficiency);
  if (!(cfg.lambda_min > 0.0)) throw DomainError("lambda_min must be positive");
  if (!(cfg.lambda_min < hi) || !std::isfinite(hi)) {
    throw DomainError("lambda_min must be below a finite lambda_max");
  }
  if (cfg.coarse_grid_points < 16) throw DomainError("coarse_grid_points must be at least 16");
  if (!(cfg.refine_tolerance > 0.0)) throw DomainError("refine_tolerance must be positive");
  if (!(cfg.tolerance > 0.0)) throw DomainError("tolerance must be positive");
}

OptimizationResult optimize_lambda(const DistributionEvaluator& evaluator,
                                   const LambdaSearchConfig& cfg) {
  const MultiplexerSpec base = evaluator.spec(0.0);
  validate(cfg, base.detector_efficiency);

  const double lo = cfg.lambda_min;
  const double hi = cfg.resolved_lambda_max(base.detector_efficiency);
  const std::size_t points = cfg.coarse_grid_points;
  const double log_step = std::log(hi / lo) / static_cast<double>(points - 1);

  CountingObjective f(evaluator, cfg.tolerance);
  std::vector<double> grid(points);
  std::vector<double> value(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = k + 1 == points ? hi : lo * std::exp(log_step * static_cast<double>(k));
    value[k] = f(grid[k]);
  }

  const auto best_it = std::max_element(value.begin(), value.end());
  const auto best_k = static_cast<std::size_t>(best_it - value.begin());

  std::vector<std::size_t> candidates;
  for (std::size_t k = 1; k + 1 < points; ++k) {
    if (value[k] > value[k - 1] && value[k] >= value[k + 1]) candidates.push_back(k);
  }
  if (!cfg.multimodal_guard) {
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [&](std::size_t k) { return k != best_k; }),
                     candidates.end());
  }

  OptimizationResult result;
  result.units = evaluator.units();
  if (requires_power_of_two(base.loss)) result.levels = exact_log2(base.units);

  LocalMaximum best{grid[best_k], value[best_k]};
  for (std::size_t k : candidates) {
    LocalMaximum peak = golden_section(f, grid[k - 1], grid[k + 1], cfg.refine_tolerance);
    if (value[k] > peak.p1) peak = {grid[k], value[k]};
    result.local_maxima.push_back(peak);
    if (peak.p1 > best.p1) best = peak;
  }

  result.at_boundary = best_k == 0 || best_k + 1 == points;
  result.lambda_opt = best.lambda;
  result.p1_max = best.p1;
  result.p0_at_opt = evaluator.distribution(best.lambda, cfg.tolerance).at(0);
  result.evaluations = f.count() + 1;
  return result;
}

OptimizationResult optimize_lambda(const MultiplexerSpec& spec_template,
                                   const LambdaSearchConfig& cfg) {
  MultiplexerSpec probe = spec_template;
  probe.total_mean_pairs = 0.0;
  validate(probe);
  return optimize_lambda(
      DistributionEvaluator(probe.loss, probe.detector_efficiency, probe.units, probe.law), cfg);
}

UnitsOptimizationResult optimize_units(const LossModel& loss, double detector_efficiency,
                                       std::span<const std::uint64_t> unit_range,
                                       const LambdaSearchConfig& cfg, PairLaw law,
                                       unsigned workers) {
  std::vector<std::uint64_t> units(unit_range.begin(), unit_range.end());
  std::sort(units.begin(), units.end());
  units.erase(std::unique(units.begin(), units.end()), units.end());
  if (units.empty()) throw DomainError("unit range must not be empty");
  validate(loss);
  for (std::uint64_t n : units) validate_units(loss, n);
  validate(cfg, detector_efficiency);

  UnitsOptimizationResult out;
  out.per_unit.resize(units.size());
  parallel_for(units.size(), workers, [&](std::size_t i) {
    out.per_unit[i] =
        optimize_lambda(DistributionEvaluator(loss, detector_efficiency, units[i], law), cfg);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.per_unit.size(); ++i) {
    if (out.per_unit[i].p1_max > out.per_unit[best].p1_max) best = i;
  }
  out.best = out.per_unit[best];
  out.at_range_edge = units.size() > 1 && (best == 0 || best + 1 == units.size());
  return out;
}

std::vector<std::uint64_t> power_of_two_range(unsigned m_min, unsigned m_max) {
  if (m_max < m_min || m_max > 62) throw DomainError("invalid power-of-two range");
  std::vector<std::uint64_t> out;
  for (unsigned m = m_min; m <= m_max; ++m) out.push_back(std::uint64_t{1} << m);
  return out;
}

std::vector<std::uint64_t> linear_range(std::uint64_t first, std::uint64_t last) {
  if (first == 0 || last < first) throw DomainError("invalid unit range");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = first; n <= last; ++n) out.push_back(n);
  return out;
}

AsymptoticPoint asymptotic_check_spatial(double router_transmission, unsigned levels,
                                         double tolerance) {
  if (!(router_transmission > 0.0 && router_transmission <= 1.0)) {
    throw DomainError("router transmission must lie in (0, 1]");
  }
  if (levels > 26) throw DomainError("too many router levels");
  const std::uint64_t units = std::uint64_t{1} << levels;
  const double per_unit = std::pow(router_transmission, -static_cast<double>(levels));
  const DistributionEvaluator eval(SpatialLoss{router_transmission, 1.0}, 1.0, units);
  return {per_unit, eval.single_photon(per_unit * static_cast<double>(units), tolerance)};
}

}  // namespace photomux
