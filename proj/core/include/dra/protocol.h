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
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dra/channel.h"
#include "dra/commit.h"
#include "dra/dist.h"

namespace dra {

struct AuctionConfig {
  std::size_t n = 2;  // real buyers
  ValueDistribution distribution = ValueDistribution::exponential(1.0);
  double reserve = 1.0;     // r(D)
  double collateral = 0.0;  // f(n, D), per depositor
  Mode mode = Mode::kBroadcast;
  SchemeKind scheme = SchemeKind::kIdeal;
  std::uint64_t seed = 0;

  // Fills `reserve` from the distribution. Throws InfiniteReserveError.
  static AuctionConfig make(ValueDistribution dist, std::size_t n,
                            double collateral, Mode mode = Mode::kBroadcast,
                            SchemeKind scheme = SchemeKind::kIdeal,
                            std::uint64_t seed = 0);

  // Recomputes r(D) and checks it against `reserve` (to 1e-9), and that
  // n >= 1 and collateral >= 0. Throws std::invalid_argument.
  void validate() const;

  bool is_false_buyer(AgentId id) const { return id.value > n; }
};

enum class LedgerKind { kRefund, kTransfer, kBurn };

// One collateral movement out of escrow. `to` is empty for a burn.
struct LedgerEntry {
  AgentId from;
  std::optional<AgentId> to;
  double amount = 0.0;
  LedgerKind kind = LedgerKind::kRefund;

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

// Physical result of a run. `winner` may be a false buyer, in which case no
// real buyer pays anything.
struct Outcome {
  std::optional<AgentId> winner;
  double sale_price = 0.0;
  std::vector<AgentId> revealed;  // ascending
  std::vector<LedgerEntry> ledger;
  double auctioneer_net = 0.0;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

using CommitmentList = std::vector<std::pair<AgentId, Commitment>>;
using OpeningList = std::vector<std::pair<AgentId, Opening>>;

// Resolution phase: S is the set of ids whose opening verifies, i* the
// lowest id among the highest bids in S. The item sells iff bid(i*) >
// reserve, at max{reserve, max over S \ {i*}}. Members of S are refunded;
// everyone else's collateral goes to i*, or is burned when S is empty.
// Throws ProtocolViolation for an opening without a commitment.
Outcome resolve(std::span<const std::pair<AgentId, Commitment>> commitments,
                std::span<const std::pair<AgentId, Opening>> openings,
                const CommitmentScheme& scheme, double reserve,
                double collateral, std::size_t real_buyers);

// Auctioneer revenue implied by an outcome: the sale price when a real buyer
// wins, minus auctioneer-funded collateral paid out or burned, plus real
// collateral captured by a false winner.
double auctioneer_net(const Outcome& outcome, std::size_t real_buyers);

// Quasilinear utility: value * 1{wins} - payment + collateral received -
// collateral lost.
double buyer_utility(const Outcome& outcome, AgentId buyer, double value);

// Net money change per real buyer (index 0 unused) and total burned,
// computed from the ledger and sale without consulting auctioneer_net.
struct Balances {
  std::vector<double> buyers;
  double burned = 0.0;
};
Balances real_balances(const Outcome& outcome, std::size_t real_buyers);

// auctioneer_net + sum(buyers) + burned == 0, and every depositor appears in
// the ledger exactly once.
bool money_conserved(const Outcome& outcome, std::size_t real_buyers,
                     std::span<const AgentId> depositors, double tol = 1e-9);

nlohmann::ordered_json to_json(const Outcome& outcome);

}  // namespace dra
