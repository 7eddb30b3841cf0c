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

// Per-buyer view checking: could this transcript have come from an honest
// run? Only the buyer's own allocation, price and collateral are checked;
// what other buyers were told is not observable.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dra/strategy.h"

namespace dra {
namespace {

constexpr double kPriceTolerance = 1e-9;

struct Observed {
  std::vector<std::pair<AgentId, const Commitment*>> commits;
  std::vector<std::pair<AgentId, double>> verified;  // verified openings

  const Commitment* commitment_of(AgentId id) const {
    for (const auto& [who, c] : commits) {
      if (who == id) return c;
    }
    return nullptr;
  }
};

Observed collect(std::span<const Message* const> events,
                 const CommitmentScheme& scheme) {
  Observed o;
  for (const Message* m : events) {
    if (const auto* c = std::get_if<CommitMsg>(&m->payload)) {
      if (o.commitment_of(c->id) == nullptr) {
        o.commits.push_back({c->id, &c->commitment});
      }
    } else if (const auto* r = std::get_if<RevealMsg>(&m->payload)) {
      const Commitment* c = o.commitment_of(r->id);
      const bool seen = std::any_of(o.verified.begin(), o.verified.end(),
                                    [&](const auto& v) { return v.first == r->id; });
      if (c != nullptr && !seen && scheme.verify(*c, r->opening)) {
        o.verified.push_back({r->id, r->opening.message});
      }
    }
  }
  return o;
}

std::string id_str(AgentId id) { return std::to_string(id.value); }

}  // namespace

ViewResolution resolve_view(std::span<const Message* const> events,
                            AgentId buyer, const AuctionConfig& config,
                            const CommitmentScheme& scheme) {
  const Observed o = collect(events, scheme);
  ViewResolution vr;
  vr.beta = config.reserve;
  const std::pair<AgentId, double>* top = nullptr;
  for (const auto& v : o.verified) {
    if (v.first == buyer) {
      vr.own_bid = v.second;
    } else {
      vr.beta = std::max(vr.beta, v.second);
    }
    if (top == nullptr || v.second > top->second ||
        (v.second == top->second && v.first < top->first)) {
      top = &v;
    }
  }
  if (top != nullptr) {
    vr.own_is_top = top->first == buyer;
    if (top->second > config.reserve) {
      vr.winner = top->first;
      vr.price = config.reserve;
      for (const auto& v : o.verified) {
        if (&v != top) vr.price = std::max(vr.price, v.second);
      }
    }
  }
  vr.unrevealed = o.commits.size() - o.verified.size();
  return vr;
}

std::optional<std::string> find_view_inconsistency(
    std::span<const Message* const> events, AgentId buyer,
    const AuctionConfig& config, const CommitmentScheme& scheme) {
  enum class Phase { kCommit, kReveal, kResolved };
  Phase phase = Phase::kCommit;
  std::vector<std::pair<AgentId, const Commitment*>> commits;
  std::vector<AgentId> revealed;
  const OutcomeNotice* notice = nullptr;
  int deposits = 0, refunds = 0, forfeits = 0, receipts = 0;
  double deposit_amount = 0.0, refund_amount = 0.0, forfeit_amount = 0.0,
         received = 0.0;

  auto find_commit = [&](AgentId id) -> const Commitment* {
    for (const auto& [who, c] : commits) {
      if (who == id) return c;
    }
    return nullptr;
  };

  for (const Message* m : events) {
    const Payload& p = m->payload;
    if (const auto* c = std::get_if<CommitMsg>(&p)) {
      if (phase != Phase::kCommit) {
        return "commitment from " + id_str(c->id) + " after end of commitment";
      }
      if (find_commit(c->id) != nullptr) {
        return "second commitment from " + id_str(c->id);
      }
      commits.push_back({c->id, &c->commitment});
    } else if (std::holds_alternative<EndCommit>(p)) {
      if (phase != Phase::kCommit) return "repeated end of commitment";
      phase = Phase::kReveal;
    } else if (const auto* r = std::get_if<RevealMsg>(&p)) {
      if (phase != Phase::kReveal) {
        return "opening from " + id_str(r->id) + " outside the reveal phase";
      }
      const Commitment* c = find_commit(r->id);
      if (c == nullptr) return "opening from " + id_str(r->id) + " without commitment";
      if (std::find(revealed.begin(), revealed.end(), r->id) != revealed.end()) {
        return "second opening from " + id_str(r->id);
      }
      if (!scheme.verify(*c, r->opening)) {
        return "opening from " + id_str(r->id) + " does not verify";
      }
      revealed.push_back(r->id);
    } else if (std::holds_alternative<EndReveal>(p)) {
      if (phase != Phase::kReveal) return "end of reveal out of order";
      phase = Phase::kResolved;
    } else if (const auto* out = std::get_if<OutcomeNotice>(&p)) {
      if (phase != Phase::kResolved) return "outcome before end of reveal";
      if (notice != nullptr) return "second outcome notice";
      notice = out;
    } else if (const auto* cn = std::get_if<CollateralNotice>(&p)) {
      switch (cn->direction) {
        case CollateralDirection::kDeposit:
          if (phase != Phase::kCommit) return "deposit after end of commitment";
          ++deposits;
          deposit_amount = cn->amount;
          break;
        case CollateralDirection::kRefund:
          if (phase != Phase::kResolved) return "refund before resolution";
          ++refunds;
          refund_amount = cn->amount;
          break;
        case CollateralDirection::kForfeit:
          if (phase != Phase::kResolved) return "forfeit before resolution";
          ++forfeits;
          forfeit_amount = cn->amount;
          break;
        case CollateralDirection::kReceive:
          if (phase != Phase::kResolved) return "collateral received before resolution";
          ++receipts;
          received = cn->amount;
          break;
      }
    }
  }

  if (find_commit(buyer) == nullptr) return "buyer never committed";
  if (phase != Phase::kResolved) return "run did not reach resolution";
  if (notice == nullptr) return "no outcome notice";
  if (deposits != 1 || std::abs(deposit_amount - config.collateral) > kPriceTolerance) {
    return "deposit does not match the collateral";
  }

  const ViewResolution vr = resolve_view(events, buyer, config, scheme);
  const bool wins = vr.winner == buyer;
  if (wins) {
    if (notice->winner != buyer) return "buyer outbid beta_i but was not sold the item";
    if (std::abs(notice->price - vr.beta) > kPriceTolerance) {
      std::ostringstream os;
      os << "price " << notice->price << " differs from beta_i " << vr.beta;
      return os.str();
    }
  } else if (notice->winner == buyer) {
    return "buyer announced as winner without the top revealed bid";
  }

  const double f = config.collateral;
  if (vr.own_bid) {
    if (refunds != 1 || forfeits != 0) return "revealed buyer not refunded";
    if (std::abs(refund_amount - f) > kPriceTolerance) return "refund amount wrong";
  } else {
    if (forfeits != 1 || refunds != 0) return "unrevealed buyer not charged";
    if (std::abs(forfeit_amount - f) > kPriceTolerance) return "forfeit amount wrong";
  }
  const bool should_receive = vr.own_is_top && vr.unrevealed > 0;
  if (should_receive) {
    if (receipts != 1) return "forfeited collateral not passed to the top bidder";
    const double expected = f * static_cast<double>(vr.unrevealed);
    if (std::abs(received - expected) > kPriceTolerance * std::max(1.0, expected)) {
      return "received collateral amount wrong";
    }
  } else if (receipts != 0) {
    return "unexpected collateral receipt";
  }
  return std::nullopt;
}

std::optional<std::string> find_view_inconsistency(
    const View& view, const AuctionConfig& config,
    const CommitmentScheme& scheme) {
  std::vector<const Message*> refs;
  refs.reserve(view.events.size());
  for (const Message& m : view.events) refs.push_back(&m);
  return find_view_inconsistency(refs, view.agent, config, scheme);
}

bool check_view_consistency(const View& view, const AuctionConfig& config,
                            const CommitmentScheme& scheme) {
  return !find_view_inconsistency(view, config, scheme).has_value();
}

}  // namespace dra
