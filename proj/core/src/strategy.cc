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

#include "dra/strategy.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dra {

double FalseBidRule::draw(const ValueDistribution& dist,
                          Rng& strategy_rng) const {
  switch (kind) {
    case Kind::kFixed:
      return a;
    case Kind::kQuantile:
      return dist.quantile(a);
    case Kind::kRandomQuantile:
      return dist.quantile(a + (b - a) * strategy_rng.uniform());
  }
  return a;
}

double FalseBidRule::max_bid(const ValueDistribution& dist) const {
  switch (kind) {
    case Kind::kFixed:
      return a;
    case Kind::kQuantile:
      return dist.quantile(a);
    case Kind::kRandomQuantile:
      return dist.quantile(b);
  }
  return a;
}

std::string FalseBidRule::describe() const {
  std::ostringstream os;
  os.precision(6);
  switch (kind) {
    case Kind::kFixed:
      os << "bid=" << a;
      break;
    case Kind::kQuantile:
      os << "quantile=" << a;
      break;
    case Kind::kRandomQuantile:
      os << "random_quantile=[" << a << "," << b << "]";
      break;
  }
  return os.str();
}

std::string_view to_string(RevealPolicy policy) {
  switch (policy) {
    case RevealPolicy::kAlwaysReveal:
      return "always";
    case RevealPolicy::kWithholdIfOutbid:
      return "withhold_if_outbid";
    case RevealPolicy::kAlwaysWithhold:
      return "withhold";
  }
  return "?";
}

namespace {

std::string describe_shill(const ShillBroadcast& s) {
  std::string out = "shill[";
  for (std::size_t i = 0; i < s.false_bids.size(); ++i) {
    if (i) out += ";";
    out += s.false_bids[i].describe();
  }
  out += "]/";
  out += to_string(s.policy);
  return out;
}

}  // namespace

std::string describe(const AuctioneerStrategy& strategy) {
  if (std::holds_alternative<Honest>(strategy)) return "honest";
  if (const auto* s = std::get_if<ShillBroadcast>(&strategy)) {
    return describe_shill(*s);
  }
  if (const auto* a = std::get_if<AdaptiveReserve>(&strategy)) {
    std::ostringstream os;
    os << "adaptive[T=" << a->threshold << "]";
    return os.str();
  }
  const auto& lifted = std::get<Lifted>(strategy);
  if (const auto* s = std::get_if<ShillBroadcast>(&lifted.inner)) {
    return "lifted(" + describe_shill(*s) + ")";
  }
  return "lifted(honest)";
}

StrategyProfile lift_to_centralized(const AuctionConfig& config,
                                    const AuctioneerStrategy& auctioneer) {
  if (config.mode != Mode::kBroadcast) {
    throw std::invalid_argument("lift expects a broadcast-mode profile");
  }
  StrategyProfile out{config, Honest{}};
  out.config.mode = Mode::kCentralized;
  if (std::holds_alternative<Honest>(auctioneer)) {
    out.auctioneer = Lifted{Honest{}};
  } else if (const auto* s = std::get_if<ShillBroadcast>(&auctioneer)) {
    out.auctioneer = Lifted{*s};
  } else {
    throw std::invalid_argument("only broadcast strategies can be lifted: " +
                                describe(auctioneer));
  }
  return out;
}

ShillBroadcast reveal_dominant_variant(const ShillBroadcast& shill,
                                       const ValueDistribution& dist,
                                       double collateral) {
  for (const FalseBidRule& rule : shill.false_bids) {
    const double top = rule.max_bid(dist);
    if (!(top <= collateral)) {
      std::ostringstream os;
      os << "false bid " << top << " exceeds collateral " << collateral;
      throw std::invalid_argument(os.str());
    }
  }
  ShillBroadcast out = shill;
  out.policy = RevealPolicy::kAlwaysReveal;
  return out;
}

}  // namespace dra
