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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dra/dist.h"
#include "dra/protocol.h"
#include "dra/strategy.h"

namespace dra::cli {

// Malformed or inconsistent experiment configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuyerSpec {
  BuyerKind kind = BuyerKind::kTruthful;
  std::optional<double> value;  // drawn from the distribution when absent
  double bid = 0.0;             // kFixedBid only
};

struct StrategySpec {
  std::string label;
  AuctioneerStrategy auctioneer = Honest{};
  std::vector<BuyerSpec> buyers;  // empty: n truthful buyers
};

struct ExperimentConfig {
  ValueDistribution distribution = ValueDistribution::exponential(1.0);
  std::size_t n = 2;
  std::optional<double> alpha;       // overrides the estimated alpha
  std::optional<double> collateral;  // overrides f(n, D)
  Mode mode = Mode::kBroadcast;
  SchemeKind scheme = SchemeKind::kIdeal;
  std::vector<StrategySpec> strategies;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::vector<double> thresholds;  // adaptive attack sweep
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

ValueDistribution parse_distribution(const nlohmann::json& j);
StrategySpec parse_strategy(const nlohmann::json& j);

// alpha used for collateral: the override, or alpha-hat snapped to the
// 1e-6 grid (values within 1e-6 of 1 count as 1).
double effective_alpha(const ExperimentConfig& config);
// The override, or f(n, D) at effective_alpha().
double effective_collateral(const ExperimentConfig& config);

// Protocol configuration for the experiment. Throws InfiniteReserveError.
AuctionConfig auction_config(const ExperimentConfig& config);

}  // namespace dra::cli
