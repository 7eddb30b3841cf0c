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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dra/channel.h"
#include "dra/commit.h"
#include "dra/protocol.h"
#include "dra/rng.h"
#include "dra/strategy.h"

namespace dra {

struct RunResult {
  Outcome outcome;  // physical truth
  Channel channel;
  std::unique_ptr<CommitmentScheme> scheme;
  std::vector<AgentId> depositors;  // every id that committed, ascending
};

// One complete auction: commitment phase (buyers commit and deposit, the
// auctioneer may add false commitments), end of commitment, revelation,
// end of revelation, resolution, outcome and collateral notices.
//
// `rng` drives buyer randomness. Auctioneer randomness comes from the
// strategy's own seed combined with `strategy_stream`, so changing buyer
// values never changes what the auctioneer commits to.
//
// Throws ProtocolViolation if a strategy is used in the wrong mode or emits
// a message out of phase.
RunResult run_auction(const AuctionConfig& config,
                      std::span<const BuyerStrategy> buyers,
                      const AuctioneerStrategy& auctioneer, Rng& rng,
                      std::uint64_t strategy_stream = 0);

// Centralized deviation against buyers A = 1 and B = 2: A's bid is opened
// early; when it reaches `threshold`, B alone is shown a false buyer C
// bidding b_A + collateral, and the outcome follows the four-way case split
// (A wins on b_B <= b_A, matching lexicographic tie-breaking).
RunResult adaptive_reserve_play(const AuctionConfig& config,
                                std::span<const BuyerStrategy> buyers,
                                double threshold, Rng& rng);

// Runtime invariants over a finished run.
struct AuditReport {
  bool money_conserved = true;
  bool single_candidate = true;   // at most one buyer with b_i > beta_i
  bool safe_allocation = true;    // b_i > beta_i => i told it wins at beta_i
  bool views_consistent = true;   // every real buyer view passes the checker
  std::string failure;

  bool ok() const {
    return money_conserved && single_candidate && safe_allocation &&
           views_consistent;
  }
};
AuditReport audit_run(const RunResult& run, const AuctionConfig& config);

// {"outcome": ..., "transcript": [...]}
nlohmann::ordered_json run_to_json(const RunResult& run);

}  // namespace dra
