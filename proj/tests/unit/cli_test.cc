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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/commands.h"
#include "cli/config.h"

namespace dra::cli {
namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TEST(ConfigParseTest, Minimal) {
  const ExperimentConfig c =
      parse_config(json::parse(R"({"distribution": {"family": "gpareto", "shape": 0.5}})"));
  EXPECT_EQ(c.distribution, ValueDistribution::generalized_pareto(0.5));
  EXPECT_EQ(c.n, 2u);
  EXPECT_FALSE(c.seed_given);
  ASSERT_EQ(c.strategies.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<Honest>(c.strategies[0].auctioneer));
  EXPECT_DOUBLE_EQ(effective_alpha(c), 0.5);
  EXPECT_NEAR(effective_collateral(c), 32, 1e-6);
}

TEST(ConfigParseTest, Rejections) {
  const char* bad[] = {
      R"({"distribution": {"family": "paretoo"}})",
      R"({"distribution": {"family": "exponential", "rate": 1, "extra": 2}})",
      R"({"distribution": {"family": "exponential"}, "sample": 10})",
      R"({"distribution": {"family": "exponential"}, "mode": "p2p"})",
      R"({"distribution": {"family": "gpareto", "shape": 1.5}})",
      R"({"distribution": {"family": "exponential"}, "n": 2,
          "strategies": [{"buyers": [{"kind": "truthful"}]}]})",
      R"({"distribution": {"family": "exponential"},
          "strategies": [{"auctioneer": {"kind": "shill", "reveal": "sometimes"}}]})",
      R"({"distribution": {"family": "exponential"},
          "strategies": [{"auctioneer": {"kind": "lifted", "inner": {"kind": "adaptive", "threshold": 3}}}]})",
      R"({"distribution": {"family": "exponential"}, "seed": -1})",
      R"({"n": 2})",
  };
  for (const char* text : bad) {
    EXPECT_THROW(parse_config(json::parse(text)), ConfigError) << text;
  }
}

TEST(ConfigParseTest, Strategies) {
  const ExperimentConfig c = parse_config(json::parse(R"({
    "distribution": {"family": "uniform", "lo": 0, "hi": 1},
    "strategies": [
      {"auctioneer": {"kind": "shill", "false_bids": [{"bid": 0.7}, {"quantile": 0.9},
        {"random_quantile": [0.5, 0.6]}], "reveal": "withhold_if_outbid", "seed": 4}},
      {"label": "x", "auctioneer": {"kind": "lifted", "inner": {"kind": "honest"}},
       "buyers": [{"kind": "fixed", "bid": 0.3, "value": 0.4}, {"kind": "no_reveal"}]}
    ]})"));
  const auto& shill = std::get<ShillBroadcast>(c.strategies[0].auctioneer);
  EXPECT_EQ(shill.false_bids.size(), 3u);
  EXPECT_EQ(shill.policy, RevealPolicy::kWithholdIfOutbid);
  EXPECT_EQ(shill.seed, 4u);
  EXPECT_EQ(c.strategies[1].label, "x");
  EXPECT_EQ(c.strategies[1].buyers[0].kind, BuyerKind::kFixedBid);
  EXPECT_EQ(c.strategies[1].buyers[1].kind, BuyerKind::kNoReveal);
}

TEST(ConfigParseTest, AlphaHatOfOneSnapsToMhr) {
  const ExperimentConfig c =
      parse_config(json::parse(R"({"distribution": {"family": "exponential"}})"));
  EXPECT_EQ(effective_alpha(c), 1.0);
  EXPECT_NEAR(effective_collateral(c), 1.0, 1e-8);
}

TEST(CommandTest, GoldenHonestTrace) {
  const ExperimentConfig c = load_config(std::string(DRA_CONFIG_DIR) + "/golden_honest.json");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(c, out, err), kExitOk);
  EXPECT_EQ(out.str(), slurp(std::string(DRA_GOLDEN_DIR) + "/honest_seed0.json"));
}

TEST(CommandTest, DistReport) {
  const ExperimentConfig c = load_config(std::string(DRA_CONFIG_DIR) + "/default.json");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_dist(c, out, err), kExitOk);
  const json j = json::parse(out.str());
  EXPECT_NEAR(j["reserve"].get<double>(), 2.0, 1e-6);
  EXPECT_EQ(j["alpha_hat"].get<double>(), 0.5);
  EXPECT_NEAR(j["collateral"]["2"].get<double>(), 32, 1e-6);

  const ExperimentConfig er = load_config(std::string(DRA_CONFIG_DIR) + "/equal_revenue.json");
  std::ostringstream out2;
  ASSERT_EQ(cmd_dist(er, out2, err), kExitOk);
  const json k = json::parse(out2.str());
  EXPECT_TRUE(k["reserve_infinite"].get<bool>());
  EXPECT_EQ(k["alpha_hat"].get<double>(), 0.0);
}

TEST(CommandTest, EstimateIsByteIdentical) {
  ExperimentConfig c = load_config(std::string(DRA_CONFIG_DIR) + "/shill_estimate.json");
  c.samples = 2000;
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_estimate(c, a, err), kExitOk);
  ASSERT_EQ(cmd_estimate(c, b, err), kExitOk);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "strategy,param,mean,std_error,samples,ci_lo,ci_hi,verdict");
}

TEST(CommandTest, ExponentialAttackFindsNothing) {
  ExperimentConfig c = load_config(std::string(DRA_CONFIG_DIR) + "/exponential_attack.json");
  c.samples = 5000;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_attack(c, out, err), kExitOk);
  EXPECT_EQ(err.str(), "no profitable T found\n");
  EXPECT_NE(out.str().find(",quadrature\n"), std::string::npos);
}

}  // namespace
}  // namespace dra::cli
