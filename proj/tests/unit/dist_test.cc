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

#include "dra/dist.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dra/errors.h"

namespace dra {
namespace {

const ValueDistribution kExp = ValueDistribution::exponential(1.0);
const ValueDistribution kGp25 = ValueDistribution::generalized_pareto(0.25);
const ValueDistribution kGp50 = ValueDistribution::generalized_pareto(0.5);
const ValueDistribution kUnit = ValueDistribution::uniform(0.0, 1.0);
const ValueDistribution kEqRev = ValueDistribution::equal_revenue();
const ValueDistribution kTwo = ValueDistribution::two_point();

nlohmann::json oracles() {
  std::ifstream in(std::string(DRA_FIXTURE_DIR) + "/oracles.json");
  return nlohmann::json::parse(in);
}

// phi from the survival function alone: density by central differences.
double numeric_phi(const ValueDistribution& d, double x) {
  const double h = 1e-5 * std::max(1.0, x);
  const double pdf = (d.survival(x - h) - d.survival(x + h)) / (2 * h);
  return x - d.survival(x) / pdf;
}

TEST(DistTest, VirtualValueExamples) {
  EXPECT_NEAR(virtual_value(kExp, 1.0), 0.0, 1e-12);
  EXPECT_NEAR(virtual_value(kEqRev, 3.0), -1.0, 1e-12);
  EXPECT_NEAR(virtual_value(kGp50, 2.0), 0.0, 1e-12);
  EXPECT_NEAR(virtual_value(kUnit, 1.0), 1.0, 1e-12);
  EXPECT_EQ(plus_virtual_value(kExp, 0.5), 0.0);
  EXPECT_THROW(virtual_value(kTwo, 0.5), UndefinedDensityError);
  EXPECT_THROW(kTwo.pdf(0.5), UndefinedDensityError);
}

TEST(DistTest, VirtualValueMatchesFiniteDifferences) {
  for (const auto& d : {kExp, kGp25, kGp50, ValueDistribution::uniform(1, 3), kEqRev}) {
    for (int i = 1; i <= 200; ++i) {
      const double u = 0.01 + 0.98 * (i - 1) / 199.0;
      const double x = d.quantile(u);
      EXPECT_NEAR(virtual_value(d, x), numeric_phi(d, x), 1e-5)
          << d.name() << " x=" << x;
    }
  }
}

TEST(DistTest, CdfQuantileRoundTrip) {
  for (const auto& d : {kExp, kGp25, kGp50, kUnit, kEqRev}) {
    EXPECT_EQ(d.cdf(d.support().lo), 0.0) << d.name();
    double prev = -1;
    for (int i = 1; i < 100; ++i) {
      const double u = i / 100.0;
      const double x = d.quantile(u);
      EXPECT_NEAR(d.cdf(x), u, 1e-12) << d.name();
      EXPECT_NEAR(d.quantile(d.cdf(x)), x, 1e-9 * std::max(1.0, x)) << d.name();
      EXPECT_GT(d.pdf(x), 0.0);
      EXPECT_GE(d.cdf(x), prev);
      prev = d.cdf(x);
    }
    EXPECT_NEAR(d.upper_quantile(1e-8), d.quantile(1 - 1e-8),
                1e-6 * d.upper_quantile(1e-8));
  }
}

TEST(DistTest, SampleIsQuantileOfUniform) {
  Rng a(3), b(3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(kGp50.sample(a), kGp50.quantile(b.uniform()));
  }
}

TEST(DistTest, SampleTailStaysInTail) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    ASSERT_GE(kGp50.sample_tail(10.0, rng), 10.0 * (1 - 1e-12));
    ASSERT_GE(kExp.sample_tail(30.0, rng), 30.0 * (1 - 1e-12));
  }
}

TEST(DistTest, ReservePrices) {
  EXPECT_NEAR(finite_reserve(kExp), 1.0, 1e-6);
  EXPECT_NEAR(finite_reserve(kGp50), 2.0, 1e-6);
  EXPECT_NEAR(finite_reserve(kGp25), 4.0 / 3.0, 1e-6);
  EXPECT_NEAR(finite_reserve(kUnit), 0.5, 1e-6);
  const ReservePrice r = reserve_price(kEqRev);
  EXPECT_TRUE(r.infinite);
  EXPECT_TRUE(std::isinf(r.value));
  EXPECT_THROW(finite_reserve(kEqRev), InfiniteReserveError);
  EXPECT_THROW(reserve_price(kTwo), NonRegularError);
}

TEST(DistTest, ReserveIsInfimum) {
  for (const auto& d : {kExp, kGp25, kGp50, kUnit}) {
    const double r = finite_reserve(d);
    EXPECT_LT(virtual_value(d, r - 1e-6), 0.0) << d.name();
    EXPECT_GE(virtual_value(d, r + 1e-6), 0.0) << d.name();
  }
}

TEST(DistTest, StrongRegularity) {
  EXPECT_NEAR(strong_regularity_alpha(kExp).alpha_hat, 1.0, 1e-6);
  EXPECT_TRUE(strong_regularity_alpha(kExp).is_mhr);
  EXPECT_NEAR(strong_regularity_alpha(kGp25).alpha_hat, 0.75, 1e-6);
  for (int i = 1; i <= 9; ++i) {
    const double k = i / 10.0;
    const auto d = ValueDistribution::generalized_pareto(k);
    EXPECT_NEAR(strong_regularity_alpha(d).alpha_hat, 1 - k, 1e-6) << k;
  }
  const RegularityReport er = strong_regularity_alpha(kEqRev);
  EXPECT_NEAR(er.alpha_hat, 0.0, 1e-9);
  EXPECT_TRUE(er.is_regular);
  EXPECT_FALSE(er.is_mhr);
  const RegularityReport two = strong_regularity_alpha(kTwo);
  EXPECT_FALSE(two.is_regular);
  EXPECT_FALSE(two.is_mhr);
  EXPECT_EQ(default_alpha_grid(kExp).size(), 512u);
}

TEST(DistTest, DegenerateGridRejected) {
  const std::vector<double> one{1.0};
  const std::vector<double> flat{1.0, 1.0};
  EXPECT_THROW(strong_regularity_alpha(kExp, one), std::invalid_argument);
  EXPECT_THROW(strong_regularity_alpha(kExp, flat), std::invalid_argument);
}

TEST(DistTest, AlphaIsMinimumOverAllPairs) {
  // Brute force over every pair of a small grid.
  std::vector<double> grid;
  for (int i = 1; i < 40; ++i) grid.push_back(kGp50.quantile(i / 40.0));
  double brute = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      brute = std::min(brute, (virtual_value(kGp50, grid[j]) -
                               virtual_value(kGp50, grid[i])) /
                                  (grid[j] - grid[i]));
    }
  }
  EXPECT_NEAR(strong_regularity_alpha(kGp50, grid).alpha_hat, brute, 1e-9);
}

TEST(DistTest, OptimalRevenueMatchesOracle) {
  const auto o = oracles();
  auto lookup = [](const std::string& name) {
    if (name == "exponential(1)") return kExp;
    if (name == "gpareto(0.25)") return kGp25;
    if (name == "gpareto(0.5)") return kGp50;
    return kUnit;
  };
  for (const auto& row : o["revenue"]) {
    const auto d = lookup(row["distribution"]);
    const std::size_t n = row["n"];
    EXPECT_NEAR(optimal_revenue(d, n).mean, row["value"].get<double>(), 1e-7)
        << row.dump();
  }
  EXPECT_NEAR(optimal_revenue(kExp, 1).mean, std::exp(-1.0), 1e-4);
  EXPECT_NEAR(optimal_revenue(kGp50, 1).mean, 0.5, 1e-4);
  EXPECT_EQ(optimal_revenue(kExp, 0).mean, 0.0);
  EXPECT_THROW(optimal_revenue(kEqRev, 2), InfiniteReserveError);
}

TEST(DistTest, OptimalRevenueMonteCarloAgrees) {
  const Estimate mc = optimal_revenue(kExp, 2, RevenueMethod::kMonteCarlo, {200000, 4});
  const Estimate q = optimal_revenue(kExp, 2, RevenueMethod::kQuadrature);
  EXPECT_NEAR(mc.mean, q.mean, 3 * mc.std_error);
  EXPECT_GT(mc.std_error, 0.0);
  // n > 4 switches to Monte Carlo.
  EXPECT_GT(optimal_revenue(kExp, 5, RevenueMethod::kAuto, {20000, 1}).samples, 0u);
}

TEST(DistTest, RevenueNonDecreasingInN) {
  for (const auto& d : {kExp, kGp25, kGp50, kUnit}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      EXPECT_GE(optimal_revenue(d, n + 1).mean, optimal_revenue(d, n).mean);
    }
  }
}

TEST(DistTest, CollateralFormula) {
  EXPECT_NEAR(collateral(kGp50, 2, 0.5), 32.0, 1e-6);
  // r = 4/3, (2/0.75)^(1/3) * 4^(4/3)
  EXPECT_NEAR(collateral(kGp25, 2, 0.75),
              (4.0 / 3.0) * std::cbrt(2.0 / 0.75) * std::pow(4.0, 4.0 / 3.0), 1e-8);
  EXPECT_NEAR(collateral(kGp25, 2, 0.75), 11.74, 5e-3);
  EXPECT_NEAR(collateral(kExp, 5, 1.0), 1.0, 1e-6);
  EXPECT_THROW(collateral(kExp, 2, 0.0), std::invalid_argument);
}

TEST(DistTest, TailBound) {
  const BoundCheck c = check_tail_bound(kGp50, 0.5, 4.0);
  EXPECT_NEAR(c.lhs, 4.0 / 9.0, 1e-9);
  EXPECT_NEAR(c.rhs, 1.0, 1e-8);
  EXPECT_TRUE(c.holds);
  for (double a : {0.25, 0.5, 0.75}) {
    const double r = finite_reserve(kGp25);
    const BoundCheck at_r = check_tail_bound(kGp25, a, r);
    EXPECT_NEAR(at_r.rhs / at_r.lhs, std::pow(1 / (1 - a), 1 / (1 - a)), 1e-9);
    for (double m : {1.0, 2.0, 4.0, 8.0}) {
      EXPECT_TRUE(check_tail_bound(kGp25, a, m * r).holds);
    }
  }
  EXPECT_THROW(check_tail_bound(kGp50, 0.5, 1.0), std::invalid_argument);
}

TEST(DistTest, PostedPriceIdentityAndBound) {
  for (const auto& d : {kExp, kGp25, kGp50, kUnit}) {
    const double r = finite_reserve(d);
    for (double p : {r, 1.5 * r}) {
      EXPECT_NEAR(posted_price_virtual_welfare(d, p), p * d.tail_probability(p), 1e-8)
          << d.name();
    }
  }
  for (double a : {0.25, 0.5}) {
    for (double m : {1.0, 2.0, 4.0, 8.0}) {
      EXPECT_TRUE(check_posted_price_bound(kGp50, a, 2.0 * m).holds);
    }
  }
}

TEST(DistTest, ConditionalBound) {
  Rng rng(11);
  const StatisticalBoundCheck tight = check_conditional_bound(kExp, 1.0, 1.0, 200000, rng);
  EXPECT_NEAR(tight.lhs, 2.0, 0.02);
  // E[v|v>=1] - (E[v-1|v>=1] + 1) is identically zero per sample.
  EXPECT_NEAR(tight.lhs, tight.rhs, 1e-9);
  EXPECT_TRUE(tight.holds);
  EXPECT_TRUE(check_conditional_bound(kGp50, 0.5, 2.0, 200000, rng).holds);
  EXPECT_TRUE(check_conditional_bound(kGp25, 0.75, 4.0 / 3.0, 200000, rng).holds);
}

TEST(EstimateTest, FromSamples) {
  const std::vector<double> v{1, 2, 3, 4};
  const Estimate e = Estimate::from_samples(v);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  // sample sd = sqrt(5/3)
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
  EXPECT_NEAR(e.ci_hi - e.mean, 1.96 * e.std_error, 1e-12);
  EXPECT_EQ(e.samples, 4u);
  const Estimate s = e.scaled(2.0);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.std_error, 2 * e.std_error);
  EXPECT_EQ(Estimate::exact(3.0).std_error, 0.0);
}

TEST(EstimateTest, PairwiseSumMatchesNaiveOnIntegers) {
  std::vector<double> v(1001);
  std::iota(v.begin(), v.end(), 0.0);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
}

}  // namespace
}  // namespace dra
