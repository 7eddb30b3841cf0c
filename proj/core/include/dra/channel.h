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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dra/commit.h"

namespace dra {

// 0 is the auctioneer, 1..n are real buyers, ids above n are minted by the
// auctioneer for false buyers. Nothing in the id itself marks it as false.
struct AgentId {
  std::uint32_t value = 0;

  bool is_auctioneer() const { return value == 0; }
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

inline constexpr AgentId kAuctioneer{0};

enum class Mode { kBroadcast, kCentralized };

std::string_view to_string(Mode mode);

struct CommitMsg {
  AgentId id;
  Commitment commitment;
  friend bool operator==(const CommitMsg&, const CommitMsg&) = default;
};

struct EndCommit {
  friend bool operator==(const EndCommit&, const EndCommit&) = default;
};

struct RevealMsg {
  AgentId id;
  Opening opening;
  friend bool operator==(const RevealMsg&, const RevealMsg&) = default;
};

struct EndReveal {
  friend bool operator==(const EndReveal&, const EndReveal&) = default;
};

// Allocation and payment as announced to one recipient (or to everyone in
// broadcast mode).
struct OutcomeNotice {
  std::optional<AgentId> winner;
  double price = 0.0;
  friend bool operator==(const OutcomeNotice&, const OutcomeNotice&) = default;
};

enum class CollateralDirection {
  kDeposit,  // buyer -> auctioneer escrow
  kRefund,   // escrow -> depositor
  kForfeit,  // depositor's collateral leaves escrow to someone else
  kReceive,  // recipient is paid collateral forfeited by others
};

std::string_view to_string(CollateralDirection direction);

struct CollateralNotice {
  double amount = 0.0;
  CollateralDirection direction = CollateralDirection::kDeposit;
  friend bool operator==(const CollateralNotice&,
                         const CollateralNotice&) = default;
};

using Payload = std::variant<CommitMsg, EndCommit, RevealMsg, EndReveal,
                             OutcomeNotice, CollateralNotice>;

struct Message {
  std::uint64_t t = 0;
  AgentId sender;
  std::optional<AgentId> recipient;  // empty for broadcast
  Payload payload;
};

using Transcript = std::vector<Message>;

// Messages one physical party sent or received, in delivery order.
struct View {
  AgentId agent;
  std::vector<Message> events;
};

// Message transport for one simulation run.
//
// Broadcast mode delivers every broadcast atomically to all n + 1 parties
// under a single timestamp. Centralized mode only has private links between
// the auctioneer and each buyer; what a buyer sees is whatever the auctioneer
// chooses to forward. Collateral notices travel on a private escrow link in
// both modes.
//
// Ids bind to the first physical party that uses them (ids 0..n are bound to
// their owners up front). Buyer views enforce the commit/reveal phase
// grammar; a delivery that breaks it throws ProtocolViolation.
class Channel {
 public:
  Channel(Mode mode, std::size_t real_buyers);

  Mode mode() const { return mode_; }
  std::size_t real_buyers() const { return real_buyers_; }
  std::uint64_t now() const { return clock_; }

  // `physical` is the party actually sending; `sender` the id it claims.
  void broadcast(AgentId physical, AgentId sender, Payload payload);
  void broadcast(AgentId sender, Payload payload) {
    broadcast(sender, sender, std::move(payload));
  }

  void private_send(AgentId physical, AgentId sender, AgentId recipient,
                    Payload payload);
  void private_send(AgentId sender, AgentId recipient, Payload payload) {
    private_send(sender, sender, recipient, std::move(payload));
  }

  // Lets logical time pass without sending anything.
  void advance(std::uint64_t ticks) { clock_ += ticks; }

  const Transcript& transcript() const { return transcript_; }
  View view(AgentId party) const;
  // Same events as view(), without copying them.
  std::vector<const Message*> view_refs(AgentId party) const;

 private:
  struct Binding {
    AgentId id;
    AgentId owner;
  };
  enum class Phase : std::uint8_t { kCommit, kReveal, kResolved };

  void bind(AgentId physical, AgentId sender);
  void check_party(AgentId party) const;
  void append(Message message, std::span<const AgentId> parties);
  void guard(AgentId party, const Payload& payload);

  Mode mode_;
  std::size_t real_buyers_;
  std::uint64_t clock_ = 0;
  Transcript transcript_;
  std::vector<std::vector<std::uint32_t>> views_;  // indices into transcript_
  std::vector<Phase> phases_;
  std::vector<Binding> minted_;
  std::vector<AgentId> everyone_;
};

nlohmann::ordered_json to_json(const Payload& payload);
// {t, sender, recipient | "*", payload}
nlohmann::ordered_json to_json(const Message& message);
// One JSON object per line.
std::string dump_transcript(const Transcript& transcript);

}  // namespace dra
