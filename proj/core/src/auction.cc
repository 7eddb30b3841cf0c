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

#include "dra/auction.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dra/errors.h"

namespace dra {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// State of one run: channel, commitment scheme, and every opening in play.
class Session {
 public:
  Session(const AuctionConfig& config, std::span<const BuyerStrategy> buyers,
          Rng& rng)
      : config_(config),
        buyers_(buyers),
        rng_(rng),
        channel_(config.mode, config.n),
        scheme_(make_scheme(config.scheme)),
        buyer_openings_(config.n + 1) {
    if (buyers.size() != config.n) {
      throw std::invalid_argument("expected " + std::to_string(config.n) +
                                  " buyer strategies, got " +
                                  std::to_string(buyers.size()));
    }
  }

  std::size_t n() const { return config_.n; }
  const BuyerStrategy& buyer(std::uint32_t i) const { return buyers_[i - 1]; }
  Channel& channel() { return channel_; }
  CommitmentScheme& scheme() { return *scheme_; }
  const CommitmentList& commitments() const { return commitments_; }
  const Opening& buyer_opening(std::uint32_t i) const { return buyer_openings_[i]; }

  // A broadcast in broadcast mode; in centralized mode the lifted form:
  // buyer -> auctioneer -> every other buyer, auctioneer -> every buyer.
  void publish(AgentId physical, AgentId sender, const Payload& payload) {
    if (config_.mode == Mode::kBroadcast) {
      channel_.broadcast(physical, sender, payload);
      return;
    }
    if (!physical.is_auctioneer()) {
      channel_.private_send(physical, sender, kAuctioneer, payload);
    }
    for (std::uint32_t j = 1; j <= n(); ++j) {
      if (AgentId{j} != physical) forward(AgentId{j}, payload);
    }
  }

  // Auctioneer -> one buyer over its private link.
  void forward(AgentId to, const Payload& payload) {
    channel_.private_send(kAuctioneer, kAuctioneer, to, payload);
  }

  // Draws the buyer's opening and commits to it. Returns the commitment
  // message; the caller decides how it travels.
  CommitMsg buyer_commitment(std::uint32_t i) {
    Opening o = make_opening(buyer(i).bid(), rng_, scheme_->security_bits());
    Commitment c = scheme_->commit(o);
    commitments_.push_back({AgentId{i}, c});
    buyer_openings_[i] = std::move(o);
    return CommitMsg{AgentId{i}, std::move(c)};
  }

  void deposit(std::uint32_t i) {
    channel_.private_send(AgentId{i}, kAuctioneer,
                          CollateralNotice{config_.collateral,
                                           CollateralDirection::kDeposit});
  }

  // False commitment under a fresh id. The opening is drawn from `source`.
  std::pair<AgentId, Opening> false_commitment(std::uint32_t index, double bid,
                                               Rng& source) {
    const AgentId id{static_cast<std::uint32_t>(n() + 1 + index)};
    Opening o = make_opening(bid, source, scheme_->security_bits());
    commitments_.push_back({id, scheme_->commit(o)});
    return {id, std::move(o)};
  }

  // Collateral notices for every real depositor, from the physical ledger.
  void settle_from_outcome(const Outcome& outcome) {
    for (std::uint32_t i = 1; i <= n(); ++i) {
      const AgentId me{i};
      double received = 0.0;
      bool receives = false;
      for (const LedgerEntry& e : outcome.ledger) {
        if (e.from == me) {
          forward(me, CollateralNotice{e.amount,
                                       e.kind == LedgerKind::kRefund
                                           ? CollateralDirection::kRefund
                                           : CollateralDirection::kForfeit});
        }
        if (e.kind == LedgerKind::kTransfer && e.to == me) {
          received += e.amount;
          receives = true;
        }
      }
      if (receives) {
        forward(me, CollateralNotice{received, CollateralDirection::kReceive});
      }
    }
  }

  // Outcome and collateral notices computed separately from each buyer's
  // view, for deviations that show buyers different histories.
  void settle_from_views() {
    for (std::uint32_t i = 1; i <= n(); ++i) {
      const AgentId me{i};
      const auto refs = channel_.view_refs(me);
      const ViewResolution vr = resolve_view(refs, me, config_, *scheme_);
      forward(me, OutcomeNotice{vr.winner, vr.winner ? vr.price : 0.0});
      forward(me, CollateralNotice{config_.collateral,
                                   vr.own_bid ? CollateralDirection::kRefund
                                              : CollateralDirection::kForfeit});
      if (vr.own_is_top && vr.unrevealed > 0) {
        forward(me, CollateralNotice{config_.collateral *
                                         static_cast<double>(vr.unrevealed),
                                     CollateralDirection::kReceive});
      }
    }
  }

  RunResult finish(Outcome outcome) {
    RunResult r{std::move(outcome), std::move(channel_), std::move(scheme_), {}};
    for (const auto& [id, c] : commitments_) r.depositors.push_back(id);
    std::sort(r.depositors.begin(), r.depositors.end());
    return r;
  }

 private:
  const AuctionConfig& config_;
  std::span<const BuyerStrategy> buyers_;
  Rng& rng_;
  Channel channel_;
  std::unique_ptr<CommitmentScheme> scheme_;
  std::vector<Opening> buyer_openings_;
  CommitmentList commitments_;
};

bool withhold(RevealPolicy policy, double false_bid,
              std::span<const double> real_bids) {
  switch (policy) {
    case RevealPolicy::kAlwaysReveal:
      return false;
    case RevealPolicy::kAlwaysWithhold:
      return true;
    case RevealPolicy::kWithholdIfOutbid:
      return std::all_of(real_bids.begin(), real_bids.end(),
                         [&](double b) { return false_bid > b; });
  }
  return false;
}

// Honest play and broadcast shills; in centralized mode this is the lifted
// strategy, because publish() performs the lift.
RunResult play_broadcast_strategy(const AuctionConfig& config,
                                  std::span<const BuyerStrategy> buyers,
                                  const ShillBroadcast* shill, Rng& rng,
                                  std::uint64_t strategy_stream) {
  Session s(config, buyers, rng);
  const std::uint32_t n = static_cast<std::uint32_t>(config.n);

  for (std::uint32_t i = 1; i <= n; ++i) {
    s.publish(AgentId{i}, AgentId{i}, s.buyer_commitment(i));
    s.deposit(i);
  }

  std::vector<std::pair<AgentId, Opening>> false_openings;
  if (shill != nullptr) {
    Rng srng(derive_seed(shill->seed, strategy_stream));
    for (std::size_t k = 0; k < shill->false_bids.size(); ++k) {
      const double bid = shill->false_bids[k].draw(config.distribution, srng);
      auto entry = s.false_commitment(static_cast<std::uint32_t>(k), bid, srng);
      s.publish(kAuctioneer, entry.first,
                CommitMsg{entry.first, s.commitments().back().second});
      false_openings.push_back(std::move(entry));
    }
  }
  s.publish(kAuctioneer, kAuctioneer, EndCommit{});

  OpeningList openings;
  std::vector<double> real_bids;
  for (std::uint32_t i = 1; i <= n; ++i) {
    if (!s.buyer(i).reveals()) continue;
    const Opening& o = s.buyer_opening(i);
    s.publish(AgentId{i}, AgentId{i}, RevealMsg{AgentId{i}, o});
    openings.push_back({AgentId{i}, o});
    real_bids.push_back(o.message);
  }
  for (auto& [id, o] : false_openings) {
    // Decided only from revealed real bids.
    if (withhold(shill->policy, o.message, real_bids)) continue;
    s.publish(kAuctioneer, id, RevealMsg{id, o});
    openings.push_back({id, std::move(o)});
  }
  s.publish(kAuctioneer, kAuctioneer, EndReveal{});

  Outcome outcome = resolve(s.commitments(), openings, s.scheme(),
                            config.reserve, config.collateral, config.n);
  s.publish(kAuctioneer, kAuctioneer,
            OutcomeNotice{outcome.winner, outcome.winner ? outcome.sale_price : 0.0});
  s.settle_from_outcome(outcome);
  return s.finish(std::move(outcome));
}

}  // namespace

RunResult adaptive_reserve_play(const AuctionConfig& config,
                                std::span<const BuyerStrategy> buyers,
                                double threshold, Rng& rng) {
  if (config.mode != Mode::kCentralized) {
    throw ModeMismatchError("adaptive reserve deviation needs centralized mode");
  }
  if (config.n != 2) {
    throw ProtocolViolation("adaptive reserve deviation is defined for two buyers");
  }
  Session s(config, buyers, rng);
  const AgentId a{1}, b{2}, c{3};
  Channel& ch = s.channel();

  CommitMsg ca = s.buyer_commitment(1);
  ch.private_send(a, kAuctioneer, ca);
  s.deposit(1);
  CommitMsg cb = s.buyer_commitment(2);
  ch.private_send(b, kAuctioneer, cb);
  s.deposit(2);
  s.forward(a, cb);
  s.forward(b, ca);

  // End of commitment for A only; A is asked to open.
  s.forward(a, EndCommit{});
  std::optional<RevealMsg> reveal_a;
  if (s.buyer(1).reveals()) {
    reveal_a = RevealMsg{a, s.buyer_opening(1)};
    ch.private_send(a, kAuctioneer, *reveal_a);
  }

  const bool attack = reveal_a && reveal_a->opening.message >= threshold;
  std::optional<std::pair<AgentId, Opening>> false_c;
  if (attack) {
    const double bid_c = reveal_a->opening.message + config.collateral;
    false_c = s.false_commitment(0, bid_c, rng);
    s.forward(b, CommitMsg{c, s.commitments().back().second});
  }

  s.forward(b, EndCommit{});
  std::optional<RevealMsg> reveal_b;
  if (s.buyer(2).reveals()) {
    reveal_b = RevealMsg{b, s.buyer_opening(2)};
    ch.private_send(b, kAuctioneer, *reveal_b);
  }

  OpeningList openings;
  if (reveal_a) openings.push_back({a, reveal_a->opening});
  if (reveal_b) openings.push_back({b, reveal_b->opening});

  if (!attack) {
    if (reveal_a) s.forward(b, *reveal_a);
    if (reveal_b) s.forward(a, *reveal_b);
    s.forward(a, EndReveal{});
    s.forward(b, EndReveal{});
    Outcome outcome = resolve(s.commitments(), openings, s.scheme(),
                              config.reserve, config.collateral, config.n);
    for (AgentId who : {a, b}) {
      s.forward(who, OutcomeNotice{outcome.winner,
                                   outcome.winner ? outcome.sale_price : 0.0});
    }
    s.settle_from_outcome(outcome);
    return s.finish(std::move(outcome));
  }

  const double r = config.reserve;
  const double bid_a = reveal_a->opening.message;
  const double bid_c = false_c->second.message;
  enum class Case { kNoSale, kAWins, kBWinsHidden, kBWinsAtC };
  Case kase;
  if (reveal_b && r >= std::max(bid_a, reveal_b->opening.message)) {
    kase = Case::kNoSale;
  } else if (!reveal_b || (reveal_b->opening.message <= bid_a && bid_a > r)) {
    kase = Case::kAWins;
  } else if (reveal_b->opening.message <= bid_c) {
    kase = Case::kBWinsHidden;
  } else {
    kase = Case::kBWinsAtC;
  }

  if (reveal_b) s.forward(a, *reveal_b);
  s.forward(b, *reveal_a);
  if (kase != Case::kBWinsHidden) {
    s.forward(b, RevealMsg{c, false_c->second});
  }
  s.forward(a, EndReveal{});
  s.forward(b, EndReveal{});

  Outcome outcome;
  if (kase == Case::kAWins) {
    // A is sold the item as if C did not exist; C is quietly refunded.
    const CommitmentList real(s.commitments().begin(), s.commitments().begin() + 2);
    outcome = resolve(real, openings, s.scheme(), r, config.collateral, config.n);
    outcome.revealed.push_back(c);
    outcome.ledger.push_back({c, c, config.collateral, LedgerKind::kRefund});
    outcome.auctioneer_net = auctioneer_net(outcome, config.n);
  } else {
    if (kase != Case::kBWinsHidden) openings.push_back(*false_c);
    outcome = resolve(s.commitments(), openings, s.scheme(), r,
                      config.collateral, config.n);
  }
  s.settle_from_views();
  return s.finish(std::move(outcome));
}

RunResult run_auction(const AuctionConfig& config,
                      std::span<const BuyerStrategy> buyers,
                      const AuctioneerStrategy& auctioneer, Rng& rng,
                      std::uint64_t strategy_stream) {
  const bool centralized = config.mode == Mode::kCentralized;
  return std::visit(
      Overloaded{
          [&](const Honest&) {
            return play_broadcast_strategy(config, buyers, nullptr, rng,
                                           strategy_stream);
          },
          [&](const ShillBroadcast& shill) {
            if (centralized) {
              throw ModeMismatchError(
                  "shill broadcast in centralized mode must be lifted first");
            }
            return play_broadcast_strategy(config, buyers, &shill, rng,
                                           strategy_stream);
          },
          [&](const AdaptiveReserve& adaptive) {
            return adaptive_reserve_play(config, buyers, adaptive.threshold, rng);
          },
          [&](const Lifted& lifted) {
            if (!centralized) {
              throw ModeMismatchError("lifted strategies run in centralized mode");
            }
            const auto* shill = std::get_if<ShillBroadcast>(&lifted.inner);
            return play_broadcast_strategy(config, buyers, shill, rng,
                                           strategy_stream);
          },
      },
      auctioneer);
}

AuditReport audit_run(const RunResult& run, const AuctionConfig& config) {
  AuditReport report;
  if (!money_conserved(run.outcome, config.n, run.depositors)) {
    report.money_conserved = false;
    report.failure = "money not conserved";
  }
  std::size_t candidates = 0;
  for (std::uint32_t i = 1; i <= config.n; ++i) {
    const AgentId me{i};
    const auto refs = run.channel.view_refs(me);
    if (auto why = find_view_inconsistency(refs, me, config, *run.scheme)) {
      report.views_consistent = false;
      if (report.failure.empty()) {
        report.failure = "buyer " + std::to_string(i) + ": " + *why;
      }
    }
    const ViewResolution vr = resolve_view(refs, me, config, *run.scheme);
    if (!vr.own_bid || !(*vr.own_bid > vr.beta)) continue;
    ++candidates;
    const OutcomeNotice* notice = nullptr;
    for (const Message* m : refs) {
      if (const auto* o = std::get_if<OutcomeNotice>(&m->payload)) notice = o;
    }
    if (notice == nullptr || notice->winner != me || notice->price != vr.beta) {
      report.safe_allocation = false;
      if (report.failure.empty()) {
        report.failure = "buyer " + std::to_string(i) +
                         " outbid beta_i but was not sold the item at beta_i";
      }
    }
  }
  if (candidates > 1) {
    report.single_candidate = false;
    if (report.failure.empty()) report.failure = "several buyers exceed beta_i";
  }
  return report;
}

nlohmann::ordered_json run_to_json(const RunResult& run) {
  nlohmann::ordered_json j;
  j["outcome"] = to_json(run.outcome);
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const Message& m : run.channel.transcript()) events.push_back(to_json(m));
  j["transcript"] = events;
  return j;
}

}  // namespace dra
