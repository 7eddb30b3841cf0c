// Copyright 2026 The DRA Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dra/mc.h"

#include <cmath>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace dra {
namespace {

const ValueDistribution kExp = ValueDistribution::exponential(1.0);
const ValueDistribution kGp50 = ValueDistribution::generalized_pareto(0.5);

TEST(EstimateRevenueTest, Deterministic) {
  const auto config = AuctionConfig::make(kGp50, 2, 32);
  const ShillBroadcast shill{{FalseBidRule::random_quantile(0.5, 0.99)},
                             RevealPolicy::kWithholdIfOutbid, 4};
  const Estimate a = estimate_revenue(config, shill, 5000, 9);
  const Estimate b = estimate_revenue(config, shill, 5000, 9);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(estimate_revenue(config, shill, 5000, 10).mean, a.mean);
}

TEST(EstimateRevenueTest, EmptyShillIsHonestExactly) {
  const auto config = AuctionConfig::make(kGp50, 2, 32);
  const Estimate h = estimate_revenue(config, Honest{}, 20000, 1);
  const Estimate s = estimate_revenue(
      config, ShillBroadcast{{}, RevealPolicy::kAlwaysReveal, 3}, 20000, 1);
  EXPECT_EQ(h.mean, s.mean);
  EXPECT_EQ(h.std_error, s.std_error);
}

TEST(EstimateRevenueTest, TooFewSamples) {
  const auto config = AuctionConfig::make(kExp, 2, 1);
  EXPECT_THROW(estimate_revenue(config, Honest{}, 999, 0), std::invalid_argument);
}

TEST(EstimateRevenueTest, HonestNearOptimal) {
  const auto config = AuctionConfig::make(kExp, 2, 1);
  const RevenueStudy s = study_revenue(config, Honest{}, 100000, 2, {true, 2000});
  const double rev = optimal_revenue(kExp, 2).mean;
  EXPECT_NEAR(s.revenue.mean, rev, 3 * s.revenue.std_error);
  EXPECT_NEAR(s.identity_gap.mean, 0.0, 3 * s.identity_gap.std_error);
  EXPECT_TRUE(s.invariants_ok()) << s.first_failure;
  EXPECT_EQ(s.audited, 2000u);
}

TEST(EstimateRevenueTest, ShillJustBelowReserveCannotBeatOptimal) {
  const auto config = AuctionConfig::make(kExp, 2, 1);
  const ShillBroadcast shill{{FalseBidRule::fixed(config.reserve - 1e-3)},
                             RevealPolicy::kAlwaysReveal, 0};
  const Estimate e = estimate_revenue(config, shill, 100000, 3);
  EXPECT_LE(e.mean, optimal_revenue(kExp, 2).mean + 3 * e.std_error);
}

TEST(EstimateRevenueTest, PairedComparisonOfIdenticalStrategiesIsZero) {
  const auto config = AuctionConfig::make(kExp, 2, 1);
  const Estimate d = compare_revenue(config, Honest{}, Honest{}, 2000, 0);
  EXPECT_EQ(d.mean, 0.0);
  EXPECT_EQ(d.std_error, 0.0);
}

nlohmann::json oracles() {
  std::ifstream in(std::string(DRA_FIXTURE_DIR) + "/oracles.json");
  return nlohmann::json::parse(in);
}

TEST(AdaptiveGainTest, QuadratureMatchesIndependentOracle) {
  for (const auto& row : oracles()["adaptive_gain"]) {
    const auto d = row["distribution"] == "exponential(1)" ? kExp : kGp50;
    const double want = row["value"];
    const double got = adaptive_gain_quadrature(d, row["threshold"], row["collateral"]);
    EXPECT_NEAR(got, want, 1e-10 + 1e-6 * std::abs(want)) << row.dump();
  }
}

TEST(AdaptiveGainTest, SignsOfTheSweep) {
  for (double t : {5.0, 10.0, 20.0, 50.0, 100.0}) {
    EXPECT_GT(adaptive_gain_quadrature(kGp50, t, 2), 0.0) << t;
  }
  for (double t : {2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
    EXPECT_LE(adaptive_gain_quadrature(kExp, t, 1), 0.0) << t;
  }
  EXPECT_EQ(adaptive_gain_quadrature(kGp50, std::numeric_limits<double>::infinity(), 2), 0.0);
}

TEST(AdaptiveGainTest, InfiniteThresholdIsExactlyZero) {
  const Estimate e =
      estimate_adaptive_gain(kGp50, std::numeric_limits<double>::infinity(), 2, 1000, 0);
  EXPECT_EQ(e.mean, 0.0);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(AdaptiveGainTest, ThresholdBelowReserveRejected) {
  EXPECT_THROW(estimate_adaptive_gain(kGp50, 1.0, 2, 1000, 0), std::invalid_argument);
  EXPECT_THROW(adaptive_gain_quadrature(kGp50, 1.0, 2), std::invalid_argument);
}

TEST(AdaptiveGainTest, StratifiedAgreesWithPlain) {
  // Pr[v_A >= T] = 0.1.
  const double t = kGp50.quantile(0.9);
  const AdaptiveGainStudy strat = study_adaptive_gain(kGp50, t, 2, 200000, 5, 2000);
  EXPECT_NEAR(strat.tail_probability, 0.1, 1e-12);
  EXPECT_EQ(strat.audit_failures, 0u) << strat.first_failure;
  const auto config = AuctionConfig::make(kGp50, 2, 2, Mode::kCentralized);
  const Estimate plain =
      compare_revenue(config, AdaptiveReserve{t}, Lifted{Honest{}}, 200000, 6);
  const double se = std::hypot(strat.gain.std_error, plain.std_error);
  EXPECT_NEAR(strat.gain.mean, plain.mean, 3 * se);
  EXPECT_NEAR(strat.gain.mean, adaptive_gain_quadrature(kGp50, t, 2),
              3 * strat.gain.std_error);
}

TEST(CredibilityTest, GridShape) {
  const auto grid = default_deviation_grid(20, 1);
  ASSERT_EQ(grid.size(), 41u);
  EXPECT_TRUE(std::holds_alternative<Honest>(grid.back()));
  const auto& first = std::get<ShillBroadcast>(grid.front());
  EXPECT_NEAR(first.false_bids[0].a, 0.05, 1e-12);
  EXPECT_EQ(first.policy, RevealPolicy::kAlwaysReveal);
  const auto& last = std::get<ShillBroadcast>(grid[39]);
  EXPECT_NEAR(last.false_bids[0].a, 1 - 1e-4, 1e-12);
  EXPECT_EQ(last.policy, RevealPolicy::kWithholdIfOutbid);
}

TEST(CredibilityTest, SmallSuitePassesAndReducedCollateralIsFlagged) {
  const auto grid = default_deviation_grid(5, 2);
  const CredibilityReport r = credibility_suite(kGp50, 0.5, 2, grid, 20000, 3, {{}, 500});
  EXPECT_NEAR(r.collateral, 32, 1e-6);
  EXPECT_TRUE(r.all_pass) << r.worst_strategy << " " << r.worst_margin;
  EXPECT_FALSE(r.exploratory);
  EXPECT_EQ(r.entries.size(), grid.size());

  const CredibilityReport low =
      credibility_suite(kGp50, 0.5, 2, grid, 20000, 3, {0.32, 0});
  EXPECT_TRUE(low.exploratory);
  EXPECT_TRUE(low.flags_excess);
}

}  // namespace
}  // namespace dra
