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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dra/channel.h"
#include "dra/commit.h"
#include "dra/dist.h"
#include "dra/protocol.h"

namespace dra {

// --- buyers -------------------------------------------------------------------

enum class BuyerKind {
  kTruthful,  // commit to the value, reveal the commitment's opening
  kFixedBid,  // commit to a fixed bid, reveal it
  kNoReveal,  // commit to the value, never reveal
};

struct BuyerStrategy {
  BuyerKind kind = BuyerKind::kTruthful;
  double value = 0.0;
  double fixed_bid = 0.0;

  static BuyerStrategy truthful(double value) {
    return {BuyerKind::kTruthful, value, 0.0};
  }
  static BuyerStrategy fixed(double value, double bid) {
    return {BuyerKind::kFixedBid, value, bid};
  }
  static BuyerStrategy no_reveal(double value) {
    return {BuyerKind::kNoReveal, value, 0.0};
  }

  double bid() const { return kind == BuyerKind::kFixedBid ? fixed_bid : value; }
  bool reveals() const { return kind != BuyerKind::kNoReveal; }
};

// --- auctioneer ---------------------------------------------------------------

// Value of one false bid. Only the distribution and the strategy's own seed
// may influence it; buyer values never reach this code.
struct FalseBidRule {
  enum class Kind { kFixed, kQuantile, kRandomQuantile };

  Kind kind = Kind::kFixed;
  double a = 0.0;  // bid | quantile | lower quantile
  double b = 0.0;  // upper quantile for kRandomQuantile

  static FalseBidRule fixed(double bid) { return {Kind::kFixed, bid, 0.0}; }
  static FalseBidRule quantile(double u) { return {Kind::kQuantile, u, 0.0}; }
  static FalseBidRule random_quantile(double lo, double hi) {
    return {Kind::kRandomQuantile, lo, hi};
  }

  double draw(const ValueDistribution& dist, Rng& strategy_rng) const;
  // Largest bid this rule can produce.
  double max_bid(const ValueDistribution& dist) const;
  std::string describe() const;
};

enum class RevealPolicy {
  kAlwaysReveal,
  // Withhold a false bid when it exceeds every revealed real bid.
  kWithholdIfOutbid,
  kAlwaysWithhold,
};

std::string_view to_string(RevealPolicy policy);

struct Honest {};

// False buyers broadcast commitments during the commitment phase and are
// revealed or withheld afterwards according to `policy`. Randomness comes
// from `seed` (mixed with the run's strategy stream), never from buyers.
struct ShillBroadcast {
  std::vector<FalseBidRule> false_bids;
  RevealPolicy policy = RevealPolicy::kAlwaysReveal;
  std::uint64_t seed = 0;
};

// Centralized, two buyers only.
struct AdaptiveReserve {
  double threshold = 0.0;
};

// A broadcast strategy replayed over private channels: buyer messages are
// relayed to every other buyer, auctioneer messages sent to each buyer.
struct Lifted {
  std::variant<Honest, ShillBroadcast> inner;
};

using AuctioneerStrategy =
    std::variant<Honest, ShillBroadcast, AdaptiveReserve, Lifted>;

std::string describe(const AuctioneerStrategy& strategy);

// Broadcast profile -> centralized profile with identical outcomes.
// Throws std::invalid_argument if the input is not a broadcast profile.
struct StrategyProfile {
  AuctionConfig config;
  AuctioneerStrategy auctioneer;
};
StrategyProfile lift_to_centralized(const AuctionConfig& config,
                                    const AuctioneerStrategy& auctioneer);

// Same shill with every false bid revealed. Requires every false bid to be
// at most the collateral; throws std::invalid_argument otherwise.
ShillBroadcast reveal_dominant_variant(const ShillBroadcast& shill,
                                       const ValueDistribution& dist,
                                       double collateral);

// Does this buyer's transcript look like some honest execution of the
// auction? Checks phase order, one commitment per id, openings against
// commitments, the buyer's own allocation and price (against beta_i), and
// its collateral notices. Returns a description of the first inconsistency.
std::optional<std::string> find_view_inconsistency(
    std::span<const Message* const> events, AgentId buyer,
    const AuctionConfig& config, const CommitmentScheme& scheme);
std::optional<std::string> find_view_inconsistency(
    const View& view, const AuctionConfig& config,
    const CommitmentScheme& scheme);

bool check_view_consistency(const View& view, const AuctionConfig& config,
                            const CommitmentScheme& scheme);

// What an honest auction would announce to a buyer given what it observed.
struct ViewResolution {
  std::optional<double> own_bid;  // set iff the buyer revealed
  double beta = 0.0;              // max{reserve, competing revealed bids}
  std::optional<AgentId> winner;
  double price = 0.0;
  bool own_is_top = false;        // buyer is i* in its view
  std::size_t unrevealed = 0;     // observed committers that never revealed
};
ViewResolution resolve_view(std::span<const Message* const> events,
                            AgentId buyer, const AuctionConfig& config,
                            const CommitmentScheme& scheme);

}  // namespace dra
