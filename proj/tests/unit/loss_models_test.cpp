// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "photomux/loss_models.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "photomux/errors.hpp"

namespace photomux {
namespace {

TEST(HammingWeight, Examples) {
  EXPECT_EQ(hamming_weight(0), 0u);
  EXPECT_EQ(hamming_weight(5), 2u);
  EXPECT_EQ(hamming_weight(255), 8u);
}

TEST(Transmission, Spatial) {
  const LossModel m = SpatialLoss{0.9, 1.0};
  for (std::uint64_t n = 1; n <= 8; ++n) EXPECT_NEAR(transmission(m, 8, n), 0.729, 1e-15);
}

TEST(Transmission, CavityLastWindowHasNoRoundTrips) {
  EXPECT_EQ(transmission(CavityLoss{0.97, 1.0}, 9, 9), 1.0);
  EXPECT_NEAR(transmission(CavityLoss{0.97, 1.0}, 9, 1), std::pow(0.97, 8), 1e-15);
}

TEST(Transmission, BulkTime) {
  const LossModel m = BulkTimeLoss{0.996, 0.97, 0.95, 1.0};
  // N - n = 5 = 0b101: two branches used, six bypassed.
  EXPECT_NEAR(transmission(m, 256, 251), 0.82549414372781457, 1e-15);
  // Last window: nothing delayed, all eight branches bypassed.
  EXPECT_NEAR(transmission(m, 256, 256), std::pow(0.97, 8), 1e-15);
}

TEST(Transmission, BulkPropagationUsesFullPeriod) {
  // V_t enters with exponent (N - n) / N.
  const LossModel m = BulkTimeLoss{1.0, 1.0, 0.5, 1.0};
  EXPECT_NEAR(transmission(m, 4, 1), std::pow(0.5, 0.75), 1e-15);
}

TEST(Transmission, GenericLossMultiplies) {
  EXPECT_NEAR(transmission(CavityLoss{0.9, 0.5}, 4, 2), 0.5 * 0.81, 1e-15);
  EXPECT_EQ(transmission(IdealLoss{0.42}, 1000, 17), 0.42);
}

TEST(Transmission, CollapsesToIdeal) {
  for (std::uint64_t units : {1u, 2u, 16u, 128u}) {
    for (std::uint64_t n = 1; n <= units; ++n) {
      const double ideal = transmission(IdealLoss{0.83}, units, n);
      EXPECT_EQ(transmission(SpatialLoss{1.0, 0.83}, units, n), ideal);
      EXPECT_EQ(transmission(CavityLoss{1.0, 0.83}, units, n), ideal);
      EXPECT_EQ(transmission(BulkTimeLoss{1.0, 1.0, 1.0, 0.83}, units, n), ideal);
    }
  }
}

TEST(Transmission, CavityMonotoneInWindow) {
  const LossModel m = CavityLoss{0.9, 1.0};
  for (std::uint64_t n = 1; n < 20; ++n) EXPECT_LT(transmission(m, 20, n), transmission(m, 20, n + 1));
  const LossModel flat = CavityLoss{1.0, 1.0};
  EXPECT_EQ(transmission(flat, 20, 1), transmission(flat, 20, 20));
}

TEST(Transmission, MonotoneInParameters) {
  const std::uint64_t units = 64;
  for (std::uint64_t n = 1; n <= units; ++n) {
    double last = 2.0;
    for (double p = 1.0; p >= 0.0; p -= 0.125) {
      const double v = transmission(BulkTimeLoss{p, 0.97, 0.95, 1.0}, units, n);
      EXPECT_LE(v, last);
      last = v;
    }
    last = 2.0;
    for (double p = 1.0; p >= 0.0; p -= 0.125) {
      const double v = transmission(BulkTimeLoss{0.99, 0.97, p, 1.0}, units, n);
      EXPECT_LE(v, last);
      last = v;
    }
  }
}

TEST(Transmission, Errors) {
  EXPECT_THROW(transmission(SpatialLoss{0.9, 1.0}, 6, 1), ConfigurationError);
  EXPECT_THROW(transmission(BulkTimeLoss{}, 12, 1), ConfigurationError);
  EXPECT_NO_THROW(transmission(CavityLoss{0.9, 1.0}, 6, 1));
  EXPECT_THROW(transmission(IdealLoss{}, 4, 0), DomainError);
  EXPECT_THROW(transmission(IdealLoss{}, 4, 5), DomainError);
  EXPECT_THROW(transmission(IdealLoss{}, 0, 1), DomainError);
  EXPECT_THROW(validate(LossModel{SpatialLoss{1.2, 1.0}}), DomainError);
}

TEST(MinimalPeriod, Examples) {
  // 512 windows of 100 ps plus a 30 ns controller delay.
  EXPECT_NEAR(minimal_period({51.2e-9, 30e-9, 0.0, 0.0}), 81.2e-9, 1e-18);
  EXPECT_EQ(minimal_period({10.0, 0.0, 0.0, 5.0}), 15.0);
  EXPECT_EQ(minimal_period({}), 0.0);
  EXPECT_THROW(minimal_period({-1.0, 0.0, 0.0, 0.0}), DomainError);
}

}  // namespace
}  // namespace photomux
