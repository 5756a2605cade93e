// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "photomux/errors.hpp"

namespace photomux {
namespace {

class UnitSampler {
 public:
  UnitSampler(std::uint64_t seed, std::uint64_t chunk)
      : seq_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
             static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)},
        engine_(seq_) {}

  // 53 random bits in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Pair count conditioned on at least one pair.
  std::uint64_t poisson_nonzero(double mean) {
    if (mean < 10.0) {
      const double u = uniform();
      double term = mean * std::exp(-mean) / -std::expm1(-mean);
      double cdf = term;
      std::uint64_t k = 1;
      while (u >= cdf && k < 10'000) {
        ++k;
        term *= mean / static_cast<double>(k);
        cdf += term;
      }
      return k;
    }
    std::poisson_distribution<std::uint64_t> dist(mean);
    for (;;) {
      if (const std::uint64_t k = dist(engine_); k > 0) return k;
    }
  }

  // Number of consecutive empty units, each empty with probability `p_empty`.
  std::uint64_t empty_run(double p_empty) {
    if (p_empty <= 0.0) return 0;
    if (p_empty >= 1.0) return std::numeric_limits<std::uint64_t>::max();
    const double run = std::floor(std::log1p(-uniform()) / std::log(p_empty));
    return run >= 0x1.0p63 ? std::numeric_limits<std::uint64_t>::max()
                           : static_cast<std::uint64_t>(run);
  }

  std::uint64_t thermal(double mean) {
    if (mean == 0.0) return 0;
    // P(K >= k) = r^k with r = mean / (1 + mean).
    const double r = mean / (1.0 + mean);
    return static_cast<std::uint64_t>(std::floor(std::log1p(-uniform()) / std::log(r)));
  }

 private:
  std::seed_seq seq_;
  std::mt19937_64 engine_;
};

}  // namespace

double EmpiricalDistribution::frequency(std::size_t i) const {
  if (trials == 0 || i >= counts.size()) return 0.0;
  return static_cast<double>(counts[i]) / static_cast<double>(trials);
}

EmpiricalDistribution simulate(const SimulationConfig& cfg) {
  validate(cfg.spec);
  if (cfg.trials == 0) throw DomainError("trials must be at least 1");

  const MultiplexerSpec& spec = cfg.spec;
  const std::vector<double> survive = transmissions(spec.loss, spec.units);
  const double unit_mean = spec.total_mean_pairs / static_cast<double>(spec.units);
  const double detect = spec.detector_efficiency;
  const std::size_t bins = cfg.max_recorded_photons + 1;
  const double p_empty = spec.law == PairLaw::Poisson ? std::exp(-unit_mean)
                                                      : 1.0 / (1.0 + unit_mean);

  const std::uint64_t chunks = (cfg.trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<std::vector<std::uint64_t>> partial(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    UnitSampler rng(cfg.seed, c);
    std::vector<std::uint64_t> hist(bins, 0);
    const std::uint64_t begin = c * kTrialsPerChunk;
    const std::uint64_t end = std::min(cfg.trials, begin + kTrialsPerChunk);
    for (std::uint64_t t = begin; t < end; ++t) {
      std::uint64_t photons = 0;
      // Units without pairs cannot click, so runs of them are skipped in one draw.
      for (std::uint64_t n = 0;; ++n) {
        const std::uint64_t skip = rng.empty_run(p_empty);
        if (skip >= spec.units - n) break;
        n += skip;
        const std::uint64_t pairs = spec.law == PairLaw::Poisson
                                        ? rng.poisson_nonzero(unit_mean)
                                        : 1 + rng.thermal(unit_mean);
        bool click = false;
        for (std::uint64_t k = 0; k < pairs && !click; ++k) click = rng.bernoulli(detect);
        if (!click) continue;
        // Later units are ignored once one has clicked.
        for (std::uint64_t k = 0; k < pairs; ++k) photons += rng.bernoulli(survive[n]) ? 1 : 0;
        break;
      }
      ++hist[std::min<std::uint64_t>(photons, bins - 1)];
    }
    partial[c] = std::move(hist);
  };

  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
  }

  EmpiricalDistribution out;
  out.trials = cfg.trials;
  out.counts.assign(bins, 0);
  for (const auto& hist : partial) {
    for (std::size_t i = 0; i < bins; ++i) out.counts[i] += hist[i];
  }
  while (out.counts.size() > 1 && out.counts.back() == 0) out.counts.pop_back();
  out.standard_errors.resize(out.counts.size());
  for (std::size_t i = 0; i < out.counts.size(); ++i) {
    const double p = out.frequency(i);
    out.standard_errors[i] = std::sqrt(p * (1.0 - p) / static_cast<double>(out.trials));
  }
  out.spec_fingerprint = fingerprint(spec);
  return out;
}

ComparisonReport compare_to_analytic(const EmpiricalDistribution& empirical,
                                     const OutputDistribution& analytic, double z) {
  if (empirical.spec_fingerprint != analytic.spec_fingerprint) {
    throw UsageError("empirical and analytic distributions describe different specs: [" +
                     empirical.spec_fingerprint + "] vs [" + analytic.spec_fingerprint + "]");
  }
  if (!(z > 0.0)) throw DomainError("z must be positive");
  if (empirical.trials == 0) throw DomainError("empirical distribution has no trials");

  const auto trials = static_cast<double>(empirical.trials);
  const std::size_t span = std::max(analytic.probabilities.size(), empirical.counts.size());

  ComparisonReport report;
  BinComparison tail;
  tail.pooled = true;
  tail.first_photons = std::numeric_limits<std::size_t>::max();
  tail.analytic = std::max(0.0, analytic.residual_mass);
  bool tail_used = false;

  for (std::size_t i = 0; i < span; ++i) {
    const double p = analytic.at(i);
    const double f = empirical.frequency(i);
    if (p * trials >= 10.0) {
      BinComparison bin;
      bin.first_photons = i;
      bin.analytic = p;
      bin.empirical = f;
      report.bins.push_back(bin);
    } else if (p > 0.0 || f > 0.0) {
      tail.first_photons = std::min(tail.first_photons, i);
      tail.analytic += p;
      tail.empirical += f;
      tail_used = true;
    }
  }
  if (tail_used) report.bins.push_back(tail);

  for (std::size_t b = 0; b < report.bins.size(); ++b) {
    BinComparison& bin = report.bins[b];
    const double p = std::clamp(bin.analytic, 0.0, 1.0);
    bin.standard_error = std::sqrt(p * (1.0 - p) / trials);
    const double diff = std::abs(bin.empirical - bin.analytic);
    if (bin.standard_error > 0.0) {
      bin.z_score = (bin.empirical - bin.analytic) / bin.standard_error;
    } else {
      bin.z_score = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(),
                                                       bin.empirical - bin.analytic);
    }
    bin.pass = diff <= z * bin.standard_error;
    report.pass = report.pass && bin.pass;
    if (std::abs(bin.z_score) > std::abs(report.worst_z) || b == 0) {
      report.worst_z = bin.z_score;
      report.worst_bin = b;
    }
  }
  return report;
}

}  // namespace photomux
