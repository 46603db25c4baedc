// Copyright 2026 The ldphh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ldphh/core.h"

namespace ldphh {
namespace {

TEST(DeriveFoParams, GammaMatchesDirectEvaluation) {
  const FoParams p = derive_fo_params(1024, 100000, 1.0, 0.1);
  const double gamma = std::sqrt(std::log(20480.0) / 1e5);
  EXPECT_NEAR(p.gamma, gamma, 1e-15);
  EXPECT_NEAR(p.gamma, 9.96e-3, 1e-5);
}

TEST(DeriveFoParams, ProjectionDimension) {
  const FoParams p = derive_fo_params(1024, 100000, 1.0, 0.1);
  const double gamma = std::sqrt(std::log(20480.0) / 1e5);
  const double m = std::ceil(std::log(1025.0) * std::log(20.0) / (gamma * gamma));
  EXPECT_EQ(p.m_fo, static_cast<std::uint64_t>(m));
  EXPECT_EQ(p.m_fo, 209201u);
  // Hand arithmetic with three significant digits gives about 209,597.
  EXPECT_NEAR(static_cast<double>(p.m_fo), 209597.0, 0.005 * 209597.0);
}

TEST(DeriveFoParams, RejectsBadArguments) {
  EXPECT_THROW(derive_fo_params(1, 100, 1.0, 0.1), InvalidArgument);
  EXPECT_THROW(derive_fo_params(16, 0, 1.0, 0.1), InvalidArgument);
  EXPECT_THROW(derive_fo_params(16, 100, 0.0, 0.1), InvalidArgument);
  EXPECT_THROW(derive_fo_params(16, 100, -1.0, 0.1), InvalidArgument);
  EXPECT_THROW(derive_fo_params(16, 100, 1.0, 0.0), InvalidArgument);
  EXPECT_THROW(derive_fo_params(16, 100, 1.0, 1.0), InvalidArgument);
}

TEST(DeriveFoParams, MinimumDimensionIsOne) {
  const FoParams p = derive_fo_params(2, 1, 1e-3, 0.99);
  EXPECT_GE(p.m_fo, 1u);
}

TEST(DeriveHhParams, DefaultChannelCount) {
  const HhParams p = derive_hh_params(1024, 10000, 10.0, 0.1);
  EXPECT_EQ(p.K, 1000000u);
  EXPECT_FALSE(p.k_overridden);
  EXPECT_FALSE(p.isolation_bound.has_value());
}

TEST(DeriveHhParams, RepetitionsUseBaseTwo) {
  EXPECT_EQ(derive_hh_params(1024, 100000, 2.0, 0.375).T, 3u);
  EXPECT_EQ(derive_hh_params(1024, 100000, 2.0, 0.5).T, 3u);
  EXPECT_EQ(derive_hh_params(1024, 100000, 2.0, 0.75).T, 2u);
  EXPECT_EQ(derive_hh_params(1024, 100000, 2.0, 0.9).T, 2u);
}

TEST(DeriveHhParams, ChannelBudget) {
  const HhParams p = derive_hh_params(1024, 1000000, 0.7, 0.375);
  EXPECT_EQ(p.T, 3u);
  EXPECT_NEAR(p.eps_channel, 0.1, 1e-15);
  for (double eps : {0.3, 1.0, 2.0, 5.0}) {
    for (double beta : {0.01, 0.1, 0.5}) {
      const HhParams q = derive_hh_params(1 << 12, 10000000, eps, beta);
      EXPECT_NEAR(q.eps_channel * (2 * q.T + 1), eps, 1e-12);
    }
  }
}

TEST(DeriveHhParams, ThresholdAndSeedBits) {
  const HhParams p = derive_hh_params(1024, 10000, 0.7, 0.375, 64);
  const double thr = (7.0 / 0.7) * std::sqrt(std::log(1024.0) * std::log(1.0 / 0.375) / 1e4);
  EXPECT_NEAR(p.threshold, thr, 1e-15);
  EXPECT_EQ(p.ell, 2u * 14u);  // ceil(log2 10^4) = 14 > 10
}

TEST(DeriveHhParams, OverrideReportsIsolationBound) {
  const HhParams p = derive_hh_params(1024, 100000, 2.0, 0.5, 1000000);
  ASSERT_TRUE(p.isolation_bound.has_value());
  EXPECT_NEAR(*p.isolation_bound, std::pow(0.1, 3) / p.threshold, 1e-15);
  EXPECT_TRUE(p.k_overridden);
  EXPECT_EQ(p.K, 1000000u);
  EXPECT_THROW(derive_hh_params(1024, 100000, 2.0, 0.5, 1), InvalidArgument);
}

TEST(DeriveHhParams, VacuousThresholdRejectedWithDiagnostic) {
  try {
    derive_hh_params(1024, 100, 1.0, 0.1);
    FAIL() << "expected rejection";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("vacuous"), std::string::npos);
  }
}

TEST(DeriveParams, Pure) {
  EXPECT_EQ(derive_fo_params(4096, 12345, 0.8, 0.2), derive_fo_params(4096, 12345, 0.8, 0.2));
  EXPECT_EQ(derive_hh_params(4096, 123456, 1.5, 0.2, 77),
            derive_hh_params(4096, 123456, 1.5, 0.2, 77));
}

TEST(ReportMagnitude, Examples) {
  EXPECT_NEAR(validate_report_magnitude(std::log(3.0), 4), 4.0, 1e-12);
  EXPECT_NEAR(validate_report_magnitude(50.0, 1), 1.0, 1e-12);
  const double e = std::exp(1.0);
  EXPECT_NEAR(validate_report_magnitude(1.0, 16), (e + 1) / (e - 1) * 4.0, 1e-12);
  // The quoted figure 8.6522 agrees with the exact value to 0.05%.
  EXPECT_NEAR(validate_report_magnitude(1.0, 16), 8.6522, 8.6522 * 5e-4);
  EXPECT_NEAR(c_eps(std::log(3.0)), 2.0, 1e-12);
}

TEST(IntegerHelpers, FloorPowThreeHalves) {
  EXPECT_EQ(floor_pow_three_halves(0), 0u);
  EXPECT_EQ(floor_pow_three_halves(1), 1u);
  EXPECT_EQ(floor_pow_three_halves(2), 2u);  // sqrt(8) = 2.83
  EXPECT_EQ(floor_pow_three_halves(10000), 1000000u);
  EXPECT_EQ(floor_pow_three_halves(100000), 31622776u);
  for (std::uint64_t n = 1; n < 3000; ++n) {
    const auto x = static_cast<unsigned __int128>(floor_pow_three_halves(n));
    const auto cube = static_cast<unsigned __int128>(n) * n * n;
    ASSERT_LE(x * x, cube);
    ASSERT_GT((x + 1) * (x + 1), cube);
  }
}

TEST(IntegerHelpers, CeilLog2) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(1024), 10u);
  EXPECT_EQ(ceil_log2(1025), 11u);
}

TEST(DomainTypes, Validation) {
  EXPECT_THROW(Universe(1), InvalidArgument);
  EXPECT_TRUE(Universe(2).contains(1));
  EXPECT_FALSE(Universe(2).contains(2));
  EXPECT_THROW(PrivacyBudget(0.0), InvalidArgument);
  EXPECT_THROW(PrivacyBudget(1.0, 1.0), InvalidArgument);
  EXPECT_THROW(PrivacyBudget(1.0, -0.1), InvalidArgument);
  EXPECT_NO_THROW(PrivacyBudget(1.0, 0.5));
}

TEST(KeyValueConfig, ParsesAndDumps) {
  const auto cfg = KeyValueConfig::parse("# comment\n d = 1024 \n\neps=0.5\nname = a b\n");
  EXPECT_EQ(cfg.get_u64("d", 0), 1024u);
  EXPECT_DOUBLE_EQ(cfg.get_double("eps", 0.0), 0.5);
  EXPECT_EQ(*cfg.get("name"), "a b");
  EXPECT_EQ(cfg.get_u64("missing", 7), 7u);
  EXPECT_FALSE(cfg.has("missing"));
  const auto again = KeyValueConfig::parse(cfg.dump());
  EXPECT_EQ(again.values(), cfg.values());
  EXPECT_THROW(KeyValueConfig::parse("novalue\n"), InvalidArgument);
}

}  // namespace
}  // namespace ldphh
