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

#include "dra/channel.h"

#include <algorithm>
#include <array>
#include <sstream>

#include "dra/errors.h"

namespace dra {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::optional<AgentId> payload_id(const Payload& payload) {
  if (const auto* c = std::get_if<CommitMsg>(&payload)) return c->id;
  if (const auto* r = std::get_if<RevealMsg>(&payload)) return r->id;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::kBroadcast ? "broadcast" : "centralized";
}

std::string_view to_string(CollateralDirection direction) {
  switch (direction) {
    case CollateralDirection::kDeposit:
      return "deposit";
    case CollateralDirection::kRefund:
      return "refund";
    case CollateralDirection::kForfeit:
      return "forfeit";
    case CollateralDirection::kReceive:
      return "receive";
  }
  return "?";
}

Channel::Channel(Mode mode, std::size_t real_buyers)
    : mode_(mode),
      real_buyers_(real_buyers),
      views_(real_buyers + 1),
      phases_(real_buyers + 1, Phase::kCommit) {
  everyone_.reserve(real_buyers + 1);
  for (std::uint32_t i = 0; i <= real_buyers; ++i) everyone_.push_back(AgentId{i});
}

void Channel::check_party(AgentId party) const {
  if (party.value > real_buyers_) {
    throw ProtocolViolation("agent " + std::to_string(party.value) +
                            " is not a physical party");
  }
}

void Channel::bind(AgentId physical, AgentId sender) {
  check_party(physical);
  if (sender.value <= real_buyers_) {
    if (sender != physical) {
      throw IdSpoofingError("party " + std::to_string(physical.value) +
                            " cannot send as id " +
                            std::to_string(sender.value));
    }
    return;
  }
  for (const Binding& b : minted_) {
    if (b.id == sender) {
      if (b.owner != physical) {
        throw IdSpoofingError("id " + std::to_string(sender.value) +
                              " is bound to party " +
                              std::to_string(b.owner.value));
      }
      return;
    }
  }
  minted_.push_back({sender, physical});
}

void Channel::guard(AgentId party, const Payload& payload) {
  if (party.is_auctioneer()) return;
  Phase& phase = phases_[party.value];
  const auto fail = [&](const char* what) {
    throw ProtocolViolation("buyer " + std::to_string(party.value) + ": " + what);
  };
  std::visit(Overloaded{
                 [&](const CommitMsg&) {
                   if (phase != Phase::kCommit) fail("commit after end of commitment phase");
                 },
                 [&](const EndCommit&) {
                   if (phase != Phase::kCommit) fail("duplicate end of commitment phase");
                   phase = Phase::kReveal;
                 },
                 [&](const RevealMsg&) {
                   if (phase != Phase::kReveal) fail("reveal outside the revelation phase");
                 },
                 [&](const EndReveal&) {
                   if (phase != Phase::kReveal) fail("end of revelation out of order");
                   phase = Phase::kResolved;
                 },
                 [&](const OutcomeNotice&) {
                   if (phase != Phase::kResolved) fail("outcome before end of revelation");
                 },
                 [&](const CollateralNotice&) {},
             },
             payload);
}

void Channel::append(Message message, std::span<const AgentId> parties) {
  for (AgentId p : parties) guard(p, message.payload);
  const auto index = static_cast<std::uint32_t>(transcript_.size());
  transcript_.push_back(std::move(message));
  for (AgentId p : parties) views_[p.value].push_back(index);
}

void Channel::broadcast(AgentId physical, AgentId sender, Payload payload) {
  if (mode_ != Mode::kBroadcast) {
    throw ModeMismatchError("broadcast is unavailable in centralized mode");
  }
  bind(physical, sender);
  if (auto id = payload_id(payload); id && *id != sender) {
    throw IdSpoofingError("broadcast payload names id " +
                          std::to_string(id->value) + " but sender is " +
                          std::to_string(sender.value));
  }
  if (std::holds_alternative<CollateralNotice>(payload)) {
    throw ProtocolViolation("collateral moves on the private escrow link");
  }
  append(Message{clock_++, sender, std::nullopt, std::move(payload)},
         everyone_);
}

void Channel::private_send(AgentId physical, AgentId sender, AgentId recipient,
                           Payload payload) {
  const bool escrow = std::holds_alternative<CollateralNotice>(payload);
  if (mode_ != Mode::kCentralized && !escrow) {
    throw ModeMismatchError("private channels exist only in centralized mode");
  }
  bind(physical, sender);
  check_party(recipient);
  if (physical.is_auctioneer() == recipient.is_auctioneer()) {
    throw ProtocolViolation("private links connect the auctioneer and one buyer");
  }
  if (!physical.is_auctioneer()) {
    if (auto id = payload_id(payload); id && *id != sender) {
      throw IdSpoofingError("buyer payload names a foreign id");
    }
  }
  const std::array<AgentId, 2> parties{physical, recipient};
  append(Message{clock_++, sender, recipient, std::move(payload)}, parties);
}

View Channel::view(AgentId party) const {
  check_party(party);
  View v{party, {}};
  v.events.reserve(views_[party.value].size());
  for (std::uint32_t i : views_[party.value]) v.events.push_back(transcript_[i]);
  return v;
}

std::vector<const Message*> Channel::view_refs(AgentId party) const {
  check_party(party);
  std::vector<const Message*> refs;
  refs.reserve(views_[party.value].size());
  for (std::uint32_t i : views_[party.value]) refs.push_back(&transcript_[i]);
  return refs;
}

// --- JSON -------------------------------------------------------------------

nlohmann::ordered_json to_json(const Payload& payload) {
  using nlohmann::ordered_json;
  return std::visit(
      Overloaded{
          [](const CommitMsg& m) {
            ordered_json j;
            j["type"] = "commit";
            j["id"] = m.id.value;
            j["commitment"] = m.commitment.to_string();
            return j;
          },
          [](const EndCommit&) { return ordered_json{{"type", "end_commit"}}; },
          [](const RevealMsg& m) {
            ordered_json j;
            j["type"] = "reveal";
            j["id"] = m.id.value;
            j["bid"] = m.opening.message;
            j["randomness"] = to_hex(m.opening.randomness);
            return j;
          },
          [](const EndReveal&) { return ordered_json{{"type", "end_reveal"}}; },
          [](const OutcomeNotice& m) {
            ordered_json j;
            j["type"] = "outcome";
            j["winner"] = m.winner ? ordered_json(m.winner->value) : ordered_json();
            j["price"] = m.price;
            return j;
          },
          [](const CollateralNotice& m) {
            ordered_json j;
            j["type"] = "collateral";
            j["amount"] = m.amount;
            j["direction"] = to_string(m.direction);
            return j;
          },
      },
      payload);
}

nlohmann::ordered_json to_json(const Message& message) {
  nlohmann::ordered_json j;
  j["t"] = message.t;
  j["sender"] = message.sender.value;
  if (message.recipient) {
    j["recipient"] = message.recipient->value;
  } else {
    j["recipient"] = "*";
  }
  j["payload"] = to_json(message.payload);
  return j;
}

std::string dump_transcript(const Transcript& transcript) {
  std::ostringstream os;
  for (const Message& m : transcript) os << to_json(m).dump() << '\n';
  return os.str();
}

}  // namespace dra
