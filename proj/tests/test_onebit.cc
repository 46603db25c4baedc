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
#include <numbers>

#include <gtest/gtest.h>

#include "ldphh/onebit.h"
#include "test_util.h"

namespace ldphh {
namespace {

constexpr std::uint64_t kToyD = 16;

// One repetition with K = 2 plus a 4-dimensional oracle component.
OneBitStructure toy_structure(double eps_channel) {
  const auto pub = Prf::from_seed(31);
  const auto code = ReferenceCode::build(kToyD, 32);
  std::vector<PairwiseHash> hashes{PairwiseHash(pub, HashSeed::draw(pub, 0, 16), 2)};
  return OneBitStructure(code, hashes, 2, true, 4, eps_channel, pub);
}

TEST(ComponentRatio, Values) {
  const double e = 0.3;
  EXPECT_DOUBLE_EQ(component_ratio(true, e), 2 * std::exp(e) / (std::exp(e) + 1));
  EXPECT_DOUBLE_EQ(component_ratio(false, e), 2 / (std::exp(e) + 1));
  EXPECT_NEAR(0.5 * (component_ratio(true, e) + component_ratio(false, e)), 1.0, 1e-15);
  EXPECT_LE(component_ratio(true, e), std::exp(e));
  EXPECT_GE(component_ratio(false, e), std::exp(-e));
}

TEST(OneBitStructure, Validation) {
  const auto pub = Prf::from_seed(1);
  EXPECT_THROW(OneBitStructure::fo_only(pub, 8, 0.7), InvalidArgument);
  EXPECT_NO_THROW(OneBitStructure::fo_only(pub, 8, std::numbers::ln2));
  EXPECT_THROW(OneBitStructure::fo_only(pub, 0, 0.5), InvalidArgument);
  EXPECT_THROW(OneBitStructure::fo_only(pub, 8, 0.0), InvalidArgument);
  EXPECT_THROW(toy_structure(0.24), InvalidArgument);
  const OneBitStructure s = toy_structure(0.2);
  EXPECT_EQ(s.components(), 3u);
  EXPECT_EQ(s.fo_component(), 2u);
  EXPECT_NEAR(s.total_epsilon(), 0.6, 1e-15);
  EXPECT_EQ(s.component_m(0), 32u);
  EXPECT_EQ(s.component_m(2), 4u);
  EXPECT_THROW(s.component_m(3), InvalidArgument);
  for (Item v = 0; v < kToyD; ++v) {
    const auto comps = s.item_components(v);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0], s.hash(0)(v));
    EXPECT_EQ(comps[1], 2u);
  }
}

TEST(OneBitStructure, CompositeRejectsLargeBudget) {
  const HhStructure hh = HhStructure::make(derive_hh_params(256, 20000, 4.0, 0.5, 4),
                                           CodeKind::kConcatenated, Prf::from_seed(2));
  EXPECT_THROW(OneBitStructure::composite(hh), InvalidArgument);
}

TEST(PublicString, DeterministicAndInRange) {
  const OneBitStructure s = toy_structure(0.2);
  for (std::uint64_t user = 0; user < 200; ++user) {
    const auto y = public_string(s, user, 0);
    EXPECT_EQ(y, public_string(s, user, 0));
    EXPECT_NE(y, public_string(s, user, 1));
    for (std::uint64_t c = 0; c < y.size(); ++c) {
      EXPECT_LT(y[c].position, s.component_m(c));
      EXPECT_EQ(y[c], public_component(s, user, 0, c));
    }
  }
}

TEST(PublicString, ComponentIsUniform) {
  const OneBitStructure s = toy_structure(0.2);
  std::vector<double> counts(8, 0.0);
  const int users = 40000;
  for (int u = 0; u < users; ++u) {
    const auto y = public_component(s, u, 3, 2);
    counts[2 * y.position + (y.sign > 0 ? 0 : 1)] += 1;
  }
  const std::vector<double> expect(8, users / 8.0);
  EXPECT_GT(testing::chi_square_p(testing::pearson(counts, expect), 7), 1e-3);
}

TEST(AcceptanceProb, NoItemIsOneHalf) {
  const OneBitStructure s = toy_structure(0.2);
  for (std::uint64_t u = 0; u < 50; ++u) {
    EXPECT_EQ(acceptance_prob(std::nullopt, u, 0, s), 0.5);
  }
}

TEST(AcceptanceProb, ExactIdentities) {
  const OneBitStructure s = toy_structure(0.2);
  const auto ys = enumerate_public_strings(s);
  ASSERT_EQ(ys.size(), 64u * 64u * 8u);
  const double lo = 0.5 * std::exp(-s.total_epsilon()), hi = 0.5 * std::exp(s.total_epsilon());
  for (Item v = 0; v < kToyD; ++v) {
    double mean_p = 0.0, mass = 0.0;
    for (const auto& y : ys) {
      const double base = composite_probability(std::nullopt, y, s);
      const double p = acceptance_prob(v, y, s);
      ASSERT_GE(p, lo - 1e-15);
      ASSERT_LE(p, hi + 1e-15);
      mean_p += base * p;
      const double q = composite_probability(v, y, s);
      mass += q;
      // Conditioned on b = 1, y follows Q(v).
      ASSERT_NEAR(base * p / 0.5, q, 1e-15);
    }
    EXPECT_NEAR(mean_p, 0.5, 1e-12);
    EXPECT_NEAR(mass, 1.0, 1e-12);
  }
}

class AcceptanceRatio : public ::testing::TestWithParam<double> {};

TEST_P(AcceptanceRatio, BothOutcomesWithinTotalBudget) {
  const OneBitStructure s = toy_structure(GetParam());
  const double e = s.total_epsilon();
  double worst_accept = 0.0, worst_reject = 0.0;
  for (const auto& y : enumerate_public_strings(s)) {
    double p_min = 1.0, p_max = 0.0;
    for (Item v = 0; v < kToyD; ++v) {
      const double p = acceptance_prob(v, y, s);
      p_min = std::min(p_min, p);
      p_max = std::max(p_max, p);
    }
    worst_accept = std::max(worst_accept, std::log(p_max / p_min));
    worst_reject = std::max(worst_reject, std::log((1 - p_min) / (1 - p_max)));
  }
  EXPECT_LE(worst_accept, e + 1e-12);
  EXPECT_LE(worst_reject, e + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Budgets, AcceptanceRatio,
                         ::testing::Values(0.05, 0.1, 0.2, std::numbers::ln2 / 3));

TEST(AcceptanceProb, UserAndExplicitFormsAgree) {
  const OneBitStructure s = toy_structure(0.2);
  for (std::uint64_t u = 0; u < 100; ++u) {
    const auto y = public_string(s, u, 4);
    for (Item v : {0u, 7u, 15u}) EXPECT_EQ(acceptance_prob(v, u, 4, s), acceptance_prob(v, y, s));
  }
  EXPECT_THROW(acceptance_prob(Item{1}, std::vector<PublicComponent>(2), s), InvalidArgument);
}

TEST(OneBitAudit, BitAloneCarriesNothing) {
  const OneBitStructure s = toy_structure(0.2);
  const auto ch = onebit_bit_channel(s, kToyD);
  EXPECT_NEAR(audit_ldp(ch).eps_observed(), 0.0, 1e-12);
  for (std::size_t r = 0; r < ch.rows(); ++r) EXPECT_NEAR(ch.at(r, 0), 0.5, 1e-12);
}

TEST(OneBitAudit, JointChannelBound) {
  const OneBitStructure s = toy_structure(0.2);
  const double t = s.total_epsilon();
  // b = 1 rows differ by at most e^{2t}; b = 0 rows by the ratio of the
  // extreme rejection probabilities.
  const double bound =
      std::max(2 * t, std::log((1 - 0.5 * std::exp(-t)) / (1 - 0.5 * std::exp(t))));
  const double observed = audit_ldp(onebit_joint_channel(s, kToyD)).eps_observed();
  EXPECT_GT(observed, 0.0);
  EXPECT_LE(observed, bound + 1e-9);
}

TEST(OneBitClient, EmpiricalAcceptanceRate) {
  const OneBitStructure s = toy_structure(0.2);
  const auto priv = Prf::from_seed(8);
  const int users = 40000;
  int accepted = 0;
  int agree = 0;
  for (int u = 0; u < users; ++u) {
    if (!onebit_client(Item{5}, u, 0, s, priv)) continue;
    ++accepted;
    const auto y = public_component(s, u, 0, s.fo_component());
    agree += s.input_sign(5, s.fo_component(), y.position) == y.sign;
  }
  EXPECT_NEAR(accepted / static_cast<double>(users), 0.5, 3 * std::sqrt(0.25 / users));
  // Among accepted users the oracle component follows the randomizer.
  const double keep = keep_probability(s.eps_channel());
  EXPECT_NEAR(agree / static_cast<double>(accepted), keep,
              3 * std::sqrt(keep * (1 - keep) / accepted));
}

TEST(OneBitServer, CollectAndReports) {
  const OneBitStructure s = toy_structure(0.2);
  const std::vector<std::uint8_t> bits{1, 0, 0, 1, 1};
  const auto ys = onebit_server_collect(bits, s, 2);
  ASSERT_EQ(ys.size(), 3u);
  EXPECT_EQ(ys[1], public_string(s, 3, 2));
  const auto reports = as_reports(ys[2], s);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_FALSE(reports[1].fo);
  EXPECT_EQ(reports[1].t, 0u);
  EXPECT_EQ(reports[1].k, 1u);
  EXPECT_TRUE(reports[2].fo);
  EXPECT_EQ(reports[2].report.position, ys[2][2].position);
}

TEST(OneBitFo, EstimatesUnbiasedly) {
  const std::uint64_t n = 100000, m = 64;
  const auto pub = Prf::from_seed(9);
  const OneBitStructure s = OneBitStructure::fo_only(pub, m, 0.6);
  std::vector<MaybeItem> items(n);
  for (std::uint64_t i = 0; i < n; ++i) items[i] = i % 4 ? MaybeItem(3) : std::nullopt;
  const OneBitFoResult res = onebit_fo_run(items, s, Prf::from_seed(10), 0);
  EXPECT_NEAR(res.accepted / static_cast<double>(n), 0.5, 4 * std::sqrt(0.25 / n));
  EXPECT_EQ(res.state.n_total(), res.accepted);
  const double est = res.state.inner_product(phi_column(pub, 3, m));
  const double sd = c_eps(0.6) / std::sqrt(static_cast<double>(res.accepted));
  EXPECT_NEAR(est, 0.75, 4 * sd);
}

TEST(OneBitFo, AllEmptyUsers) {
  const auto pub = Prf::from_seed(11);
  const OneBitStructure s = OneBitStructure::fo_only(pub, 16, 0.5);
  const std::vector<MaybeItem> items(20000);
  const OneBitFoResult res = onebit_fo_run(items, s, Prf::from_seed(12), 0);
  const double sd = c_eps(0.5) / std::sqrt(static_cast<double>(res.accepted));
  EXPECT_NEAR(res.state.inner_product(phi_column(pub, 1, 16)), 0.0, 4 * sd);
}

}  // namespace
}  // namespace ldphh
