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

#include "cli/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

namespace dra::cli {
namespace {

using nlohmann::json;

void expect_object(const json& j, std::string_view where) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + ": expected an object");
  }
}

void only_keys(const json& j, std::initializer_list<std::string_view> allowed,
               std::string_view where) {
  expect_object(j, where);
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
    }
  }
}

double number(const json& j, std::string_view key, std::string_view where) {
  if (!j.contains(key)) {
    throw ConfigError(std::string(where) + ": missing \"" + std::string(key) + "\"");
  }
  const json& v = j.at(std::string(key));
  if (!v.is_number()) {
    throw ConfigError(std::string(where) + "." + std::string(key) +
                      ": expected a number");
  }
  return v.get<double>();
}

std::string text(const json& j, std::string_view key, std::string_view where) {
  if (!j.contains(key) || !j.at(std::string(key)).is_string()) {
    throw ConfigError(std::string(where) + ": missing string \"" +
                      std::string(key) + "\"");
  }
  return j.at(std::string(key)).get<std::string>();
}

std::uint64_t count(const json& j, std::string_view where) {
  if (!j.is_number_unsigned()) {
    throw ConfigError(std::string(where) + ": expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

FalseBidRule parse_false_bid(const json& j) {
  constexpr std::string_view where = "false_bids[]";
  expect_object(j, where);
  if (j.size() != 1) {
    throw ConfigError("false_bids[]: expected exactly one of bid, quantile, random_quantile");
  }
  if (j.contains("bid")) return FalseBidRule::fixed(number(j, "bid", where));
  if (j.contains("quantile")) {
    const double u = number(j, "quantile", where);
    if (!(u > 0.0 && u < 1.0)) throw ConfigError("false_bids[].quantile must be in (0, 1)");
    return FalseBidRule::quantile(u);
  }
  if (j.contains("random_quantile")) {
    const json& r = j.at("random_quantile");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
      throw ConfigError("false_bids[].random_quantile: expected [lo, hi]");
    }
    const double lo = r[0].get<double>(), hi = r[1].get<double>();
    if (!(lo > 0.0 && lo <= hi && hi < 1.0)) {
      throw ConfigError("false_bids[].random_quantile: need 0 < lo <= hi < 1");
    }
    return FalseBidRule::random_quantile(lo, hi);
  }
  throw ConfigError("false_bids[]: expected one of bid, quantile, random_quantile");
}

RevealPolicy parse_policy(const std::string& s) {
  if (s == "always") return RevealPolicy::kAlwaysReveal;
  if (s == "withhold_if_outbid") return RevealPolicy::kWithholdIfOutbid;
  if (s == "withhold") return RevealPolicy::kAlwaysWithhold;
  throw ConfigError("unknown reveal policy \"" + s + "\"");
}

ShillBroadcast parse_shill(const json& j) {
  only_keys(j, {"kind", "false_bids", "reveal", "seed"}, "shill");
  ShillBroadcast s;
  if (j.contains("false_bids")) {
    if (!j.at("false_bids").is_array()) throw ConfigError("shill.false_bids: expected an array");
    for (const json& b : j.at("false_bids")) s.false_bids.push_back(parse_false_bid(b));
  }
  if (j.contains("reveal")) s.policy = parse_policy(text(j, "reveal", "shill"));
  if (j.contains("seed")) s.seed = count(j.at("seed"), "shill.seed");
  return s;
}

AuctioneerStrategy parse_auctioneer(const json& j) {
  expect_object(j, "auctioneer");
  const std::string kind = text(j, "kind", "auctioneer");
  if (kind == "honest") {
    only_keys(j, {"kind"}, "honest");
    return Honest{};
  }
  if (kind == "shill") return parse_shill(j);
  if (kind == "adaptive") {
    only_keys(j, {"kind", "threshold"}, "adaptive");
    return AdaptiveReserve{number(j, "threshold", "adaptive")};
  }
  if (kind == "lifted") {
    only_keys(j, {"kind", "inner"}, "lifted");
    if (!j.contains("inner")) throw ConfigError("lifted: missing \"inner\"");
    const AuctioneerStrategy inner = parse_auctioneer(j.at("inner"));
    if (const auto* s = std::get_if<ShillBroadcast>(&inner)) return Lifted{*s};
    if (std::holds_alternative<Honest>(inner)) return Lifted{Honest{}};
    throw ConfigError("lifted: inner strategy must be honest or shill");
  }
  throw ConfigError("unknown auctioneer kind \"" + kind + "\"");
}

BuyerSpec parse_buyer(const json& j) {
  only_keys(j, {"kind", "value", "bid"}, "buyers[]");
  BuyerSpec b;
  const std::string kind = j.contains("kind") ? text(j, "kind", "buyers[]") : "truthful";
  if (kind == "truthful") {
    b.kind = BuyerKind::kTruthful;
  } else if (kind == "fixed") {
    b.kind = BuyerKind::kFixedBid;
    b.bid = number(j, "bid", "buyers[]");
  } else if (kind == "no_reveal") {
    b.kind = BuyerKind::kNoReveal;
  } else {
    throw ConfigError("unknown buyer kind \"" + kind + "\"");
  }
  if (kind != "fixed" && j.contains("bid")) {
    throw ConfigError("buyers[]: \"bid\" only applies to fixed buyers");
  }
  if (j.contains("value")) b.value = number(j, "value", "buyers[]");
  return b;
}

}  // namespace

ValueDistribution parse_distribution(const json& j) {
  expect_object(j, "distribution");
  const std::string family = text(j, "family", "distribution");
  try {
    if (family == "exponential") {
      only_keys(j, {"family", "rate"}, "distribution");
      return ValueDistribution::exponential(j.contains("rate") ? number(j, "rate", "distribution") : 1.0);
    }
    if (family == "gpareto" || family == "generalized_pareto") {
      only_keys(j, {"family", "shape"}, "distribution");
      return ValueDistribution::generalized_pareto(number(j, "shape", "distribution"));
    }
    if (family == "uniform") {
      only_keys(j, {"family", "lo", "hi"}, "distribution");
      return ValueDistribution::uniform(number(j, "lo", "distribution"),
                                        number(j, "hi", "distribution"));
    }
    if (family == "equal_revenue") {
      only_keys(j, {"family"}, "distribution");
      return ValueDistribution::equal_revenue();
    }
    if (family == "two_point") {
      only_keys(j, {"family"}, "distribution");
      return ValueDistribution::two_point();
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("distribution: ") + e.what());
  }
  throw ConfigError("unknown distribution family \"" + family + "\"");
}

StrategySpec parse_strategy(const json& j) {
  only_keys(j, {"label", "auctioneer", "buyers"}, "strategies[]");
  StrategySpec s;
  if (j.contains("auctioneer")) s.auctioneer = parse_auctioneer(j.at("auctioneer"));
  if (j.contains("buyers")) {
    if (!j.at("buyers").is_array()) throw ConfigError("buyers: expected an array");
    for (const json& b : j.at("buyers")) s.buyers.push_back(parse_buyer(b));
  }
  s.label = j.contains("label") ? text(j, "label", "strategies[]") : describe(s.auctioneer);
  return s;
}

ExperimentConfig parse_config(const json& j) {
  only_keys(j,
            {"distribution", "n", "alpha", "collateral", "mode", "scheme",
             "strategies", "samples", "seed", "out", "thresholds"},
            "config");
  ExperimentConfig c;
  if (!j.contains("distribution")) throw ConfigError("config: missing \"distribution\"");
  c.distribution = parse_distribution(j.at("distribution"));
  if (j.contains("n")) {
    c.n = count(j.at("n"), "n");
    if (c.n < 1) throw ConfigError("n must be at least 1");
  }
  if (j.contains("alpha")) {
    c.alpha = number(j, "alpha", "config");
    if (!(*c.alpha > 0.0)) throw ConfigError("alpha must be positive");
  }
  if (j.contains("collateral")) {
    c.collateral = number(j, "collateral", "config");
    if (!(*c.collateral >= 0.0)) throw ConfigError("collateral must be non-negative");
  }
  if (j.contains("mode")) {
    const std::string m = text(j, "mode", "config");
    if (m == "broadcast") c.mode = Mode::kBroadcast;
    else if (m == "centralized") c.mode = Mode::kCentralized;
    else throw ConfigError("unknown mode \"" + m + "\"");
  }
  if (j.contains("scheme")) {
    const std::string s = text(j, "scheme", "config");
    if (s == "ideal") c.scheme = SchemeKind::kIdeal;
    else if (s == "hash") c.scheme = SchemeKind::kHash;
    else throw ConfigError("unknown commitment scheme \"" + s + "\"");
  }
  if (j.contains("strategies")) {
    if (!j.at("strategies").is_array()) throw ConfigError("strategies: expected an array");
    for (const json& s : j.at("strategies")) c.strategies.push_back(parse_strategy(s));
  }
  if (c.strategies.empty()) c.strategies.push_back(StrategySpec{"honest", Honest{}, {}});
  for (const StrategySpec& s : c.strategies) {
    if (!s.buyers.empty() && s.buyers.size() != c.n) {
      throw ConfigError("strategy \"" + s.label + "\": expected " +
                        std::to_string(c.n) + " buyers");
    }
  }
  if (j.contains("samples")) c.samples = count(j.at("samples"), "samples");
  if (j.contains("seed")) {
    c.seed = count(j.at("seed"), "seed");
    c.seed_given = true;
  }
  if (j.contains("out")) c.out = text(j, "out", "config");
  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    if (!t.is_array()) throw ConfigError("thresholds: expected an array");
    for (const json& x : t) {
      if (!x.is_number()) throw ConfigError("thresholds: expected numbers");
      c.thresholds.push_back(x.get<double>());
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return parse_config(j);
}

double effective_alpha(const ExperimentConfig& config) {
  if (config.alpha) return *config.alpha;
  const double a = strong_regularity_alpha(config.distribution).alpha_hat;
  if (a >= 1.0 - kAlphaTolerance) return 1.0;
  return std::round(a / kAlphaTolerance) * kAlphaTolerance;
}

double effective_collateral(const ExperimentConfig& config) {
  if (config.collateral) return *config.collateral;
  const double a = effective_alpha(config);
  if (!(a > 0.0)) {
    throw ConfigError("alpha-hat is " + std::to_string(a) +
                      "; set \"collateral\" explicitly");
  }
  return collateral(config.distribution, config.n, a);
}

AuctionConfig auction_config(const ExperimentConfig& config) {
  return AuctionConfig::make(config.distribution, config.n,
                             effective_collateral(config), config.mode,
                             config.scheme, config.seed);
}

}  // namespace dra::cli
