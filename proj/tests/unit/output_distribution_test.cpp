// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/output_distribution.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "photomux/errors.hpp"

namespace photomux {
namespace {

//---------------------------------------------------------------------------//
// Brute-force oracle: enumerate every joint pair-count vector (k_1..k_N),
// apply the first-click rule and binomial loss explicitly.
//---------------------------------------------------------------------------//
double oracle_pmf(PairLaw law, double mu, int k) {
  if (law == PairLaw::Poisson) return std::pow(mu, k) * std::exp(-mu) / std::tgamma(k + 1.0);
  return std::pow(mu, k) / std::pow(1.0 + mu, k + 1);
}

double oracle_binomial(int trials, int hits, double p) {
  const double c = std::tgamma(trials + 1.0) / (std::tgamma(hits + 1.0) * std::tgamma(trials - hits + 1.0));
  return c * std::pow(p, hits) * std::pow(1.0 - p, trials - hits);
}

std::vector<double> enumerate_distribution(const MultiplexerSpec& spec, int max_pairs) {
  const int units = static_cast<int>(spec.units);
  const double mu = spec.total_mean_pairs / units;
  const double miss = 1.0 - spec.detector_efficiency;
  std::vector<double> pmf(max_pairs + 1), silent(max_pairs + 1);
  for (int k = 0; k <= max_pairs; ++k) {
    pmf[k] = oracle_pmf(spec.law, mu, k);
    silent[k] = std::pow(miss, k);
  }
  // thinned[n][k][i]: unit n emits i photons from k pairs.
  std::vector<std::vector<std::vector<double>>> thinned(units);
  for (int n = 0; n < units; ++n) {
    const double v = transmission(spec.loss, spec.units, static_cast<std::uint64_t>(n) + 1);
    thinned[n].resize(max_pairs + 1);
    for (int k = 0; k <= max_pairs; ++k) {
      for (int i = 0; i <= k; ++i) thinned[n][k].push_back(oracle_binomial(k, i, v));
    }
  }

  std::vector<double> out(max_pairs + 1, 0.0);
  std::vector<int> k(units, 0);
  while (true) {
    double weight = 1.0;
    for (int n = 0; n < units; ++n) weight *= pmf[k[n]];
    double silent_so_far = weight;
    for (int n = 0; n < units; ++n) {
      const double click = silent_so_far * (1.0 - silent[k[n]]);
      for (int i = 0; i <= k[n]; ++i) out[i] += click * thinned[n][k[n]][i];
      silent_so_far *= silent[k[n]];
    }
    out[0] += silent_so_far;

    int pos = 0;
    while (pos < units && ++k[pos] > max_pairs) k[pos++] = 0;
    if (pos == units) break;
  }
  return out;
}

double sum(const OutputDistribution& d) {
  return std::accumulate(d.probabilities.begin(), d.probabilities.end(), 0.0);
}

TEST(OutputDistribution, SingleUnitIsThePoissonLaw) {
  const MultiplexerSpec spec{IdealLoss{1.0}, 1.0, 1, 1.0};
  const auto d = output_distribution(spec);
  EXPECT_NEAR(d.at(0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(d.at(1), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(d.at(2), std::exp(-1.0) / 2, 1e-15);
  for (std::size_t i = 1; i <= d.i_max; ++i) {
    EXPECT_NEAR(d.at(i), pair_pmf({PairLaw::Poisson, 1.0}, i), 1e-15);
  }
}

TEST(OutputDistribution, SingleUnitThermal) {
  const MultiplexerSpec spec{CavityLoss{1.0, 1.0}, 1.0, 1, 2.0, PairLaw::Thermal};
  const auto d = output_distribution(spec);
  for (std::size_t i = 0; i <= 20; ++i) {
    EXPECT_NEAR(d.at(i), pair_pmf({PairLaw::Thermal, 2.0}, i), 1e-15);
  }
}

TEST(OutputDistribution, ZeroPairsGivesVacuum) {
  for (const LossModel& m : {LossModel{IdealLoss{0.5}}, LossModel{CavityLoss{0.9, 1.0}},
                             LossModel{BulkTimeLoss{0.9, 0.9, 0.9, 0.9}}}) {
    const auto d = output_distribution({m, 0.7, 16, 0.0});
    ASSERT_EQ(d.probabilities.size(), 1u);
    EXPECT_EQ(d.at(0), 1.0);
    EXPECT_EQ(d.i_max, 0u);
  }
}

TEST(OutputDistribution, MatchesEnumerationOracle) {
  const std::vector<MultiplexerSpec> specs{
      {BulkTimeLoss{0.9, 0.8, 0.7, 0.95}, 0.6, 4, 2.5},
      {CavityLoss{0.75, 0.9}, 0.9, 3, 1.7, PairLaw::Thermal},
      {SpatialLoss{0.8, 1.0}, 0.3, 2, 4.0},
      {CavityLoss{0.6, 1.0}, 1.0, 3, 0.9},
  };
  for (const auto& spec : specs) {
    const auto oracle = enumerate_distribution(spec, spec.units == 2 ? 60 : 28);
    const auto d = output_distribution(spec, 1e-12);
    for (std::size_t i = 0; i < 12; ++i) {
      EXPECT_NEAR(d.at(i), oracle[i], 5e-12) << fingerprint(spec) << " i=" << i;
    }
  }
}

TEST(OutputDistribution, PaperIdealAnchor) {
  const MultiplexerSpec spec{IdealLoss{0.9}, 1.0, 256, 6.46};
  EXPECT_NEAR(output_distribution(spec).at(1), 0.8895, 1e-4);
}

TEST(OutputDistribution, PaperBulkAnchor) {
  const MultiplexerSpec spec{BulkTimeLoss{0.996, 0.97, 0.95, 1.0}, 1.0, 128, 6.60};
  const auto d = output_distribution(spec);
  EXPECT_NEAR(d.at(1), 0.858, 5e-4);
  EXPECT_NEAR(d.at(0), 0.1222, 5e-5);
}

TEST(OutputDistribution, PaperSpatialAnchor) {
  const MultiplexerSpec spec{SpatialLoss{0.95, 1.0}, 1.0, 16, 3.89};
  const auto d = output_distribution(spec);
  EXPECT_NEAR(d.at(1), 0.737, 5e-4);
  EXPECT_NEAR(d.at(0), 0.185, 5e-4);
}

TEST(SinglePhoton, PaperCavityAnchor) {
  EXPECT_NEAR(single_photon_probability({CavityLoss{0.97, 1.0}, 1.0, 9, 3.014}), 0.706, 5e-4);
}

TEST(SinglePhoton, LargeIdealMatchesClosedForm) {
  // mu e^-mu (1 - p^N) / (1 - p) with p = e^-mu, mu = 11/4096.
  EXPECT_NEAR(single_photon_probability({IdealLoss{1.0}, 1.0, 4096, 11.0}), 0.99864114829170123,
              1e-12);
}

TEST(SinglePhoton, IdenticalToFullDistribution) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const MultiplexerSpec spec{BulkTimeLoss{u(rng), u(rng), u(rng), u(rng)}, u(rng),
                               std::uint64_t{1} << (t % 9), 30.0 * u(rng)};
    EXPECT_EQ(single_photon_probability(spec), output_distribution(spec).at(1));
  }
}

TEST(OutputDistribution, BlindDetectorGivesVacuum) {
  const auto d = output_distribution({CavityLoss{0.9, 1.0}, 0.0, 10, 5.0});
  EXPECT_NEAR(d.at(0), 1.0, 1e-10);
}

TEST(OutputDistribution, CollapseToIdealIsExact) {
  for (std::uint64_t units : {1u, 8u, 256u}) {
    for (double lambda : {0.3, 4.0, 25.0}) {
      const auto ideal = output_distribution({IdealLoss{0.85}, 0.7, units, lambda});
      const auto spatial = output_distribution({SpatialLoss{1.0, 0.85}, 0.7, units, lambda});
      const auto cavity = output_distribution({CavityLoss{1.0, 0.85}, 0.7, units, lambda});
      const auto bulk = output_distribution({BulkTimeLoss{1.0, 1.0, 1.0, 0.85}, 0.7, units, lambda});
      EXPECT_EQ(ideal.probabilities, spatial.probabilities);
      EXPECT_EQ(ideal.probabilities, cavity.probabilities);
      EXPECT_EQ(ideal.probabilities, bulk.probabilities);
    }
  }
}

TEST(OutputDistribution, NormalizedForRandomSpecs) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t units = std::uint64_t{1} << (t % 12);
    const LossModel models[] = {IdealLoss{u(rng)}, SpatialLoss{u(rng), u(rng)},
                                CavityLoss{u(rng), u(rng)},
                                BulkTimeLoss{u(rng), u(rng), u(rng), u(rng)}};
    const MultiplexerSpec spec{models[t % 4], u(rng), units, 60.0 * u(rng),
                               t % 3 ? PairLaw::Poisson : PairLaw::Thermal};
    const auto d = output_distribution(spec);
    EXPECT_NEAR(sum(d), 1.0, 1e-9) << fingerprint(spec);
    EXPECT_NEAR(sum(d) + d.residual_mass, 1.0, 1e-15);
    EXPECT_LT(d.residual_mass, 1e-9);
    for (double p : d.probabilities) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
  }
}

TEST(OutputDistribution, IdealSinglePhotonBoundedByGenericLoss) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // k V (1-V)^(k-1) <= V for every k once V >= 1/2, so the bound is strict there.
  for (int t = 0; t < 100; ++t) {
    const double vb = 0.5 + 0.5 * u(rng);
    const MultiplexerSpec spec{IdealLoss{vb}, u(rng), std::uint64_t{1} << (t % 13), 20 * u(rng)};
    EXPECT_LE(single_photon_probability(spec), vb);
  }
}

TEST(OutputDistribution, Errors) {
  EXPECT_THROW(output_distribution({IdealLoss{}, 1.0, 4, 1.0}, 0.0), DomainError);
  EXPECT_THROW(output_distribution({IdealLoss{}, 1.0, 4, -1.0}), DomainError);
  EXPECT_THROW(output_distribution({SpatialLoss{}, 1.0, 3, 1.0}), ConfigurationError);
  EXPECT_THROW(output_distribution({IdealLoss{}, 1.5, 4, 1.0}), DomainError);
  EXPECT_THROW(output_distribution({IdealLoss{}, 1.0, 0, 1.0}), DomainError);
}

TEST(Fingerprint, DistinguishesSpecs) {
  const MultiplexerSpec a{CavityLoss{0.9, 1.0}, 1.0, 8, 2.0};
  MultiplexerSpec b = a;
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  b.total_mean_pairs = 2.0000000001;
  EXPECT_NE(fingerprint(a), fingerprint(b));
  b = a;
  b.law = PairLaw::Thermal;
  EXPECT_NE(fingerprint(a), fingerprint(b));
}

}  // namespace
}  // namespace photomux
