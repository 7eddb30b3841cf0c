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

#include "dra/protocol.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dra/errors.h"

namespace dra {

AuctionConfig AuctionConfig::make(ValueDistribution dist, std::size_t n,
                                  double collateral, Mode mode,
                                  SchemeKind scheme, std::uint64_t seed) {
  AuctionConfig c;
  c.reserve = finite_reserve(dist);
  c.distribution = std::move(dist);
  c.n = n;
  c.collateral = collateral;
  c.mode = mode;
  c.scheme = scheme;
  c.seed = seed;
  c.validate();
  return c;
}

void AuctionConfig::validate() const {
  if (n < 1) throw std::invalid_argument("auction needs at least one buyer");
  if (!(collateral >= 0.0) || !std::isfinite(collateral)) {
    throw std::invalid_argument("collateral must be finite and >= 0");
  }
  const double r = finite_reserve(distribution);
  if (!(std::abs(r - reserve) <= kRootTolerance)) {
    throw std::invalid_argument("reserve does not match r(D) of " +
                                distribution.name());
  }
}

Outcome resolve(std::span<const std::pair<AgentId, Commitment>> commitments,
                std::span<const std::pair<AgentId, Opening>> openings,
                const CommitmentScheme& scheme, double reserve,
                double collateral, std::size_t real_buyers) {
  const auto find_commitment = [&](AgentId id) -> const Commitment* {
    for (const auto& [cid, c] : commitments) {
      if (cid == id) return &c;
    }
    return nullptr;
  };

  struct Revealed {
    AgentId id;
    double bid;
  };
  std::vector<Revealed> s;
  s.reserve(openings.size());
  for (const auto& [id, opening] : openings) {
    const Commitment* c = find_commitment(id);
    if (c == nullptr) {
      throw ProtocolViolation("opening for unknown id " + std::to_string(id.value));
    }
    if (scheme.verify(*c, opening)) s.push_back({id, opening.message});
  }
  std::sort(s.begin(), s.end(),
            [](const Revealed& a, const Revealed& b) { return a.id < b.id; });
  s.erase(std::unique(s.begin(), s.end(),
                      [](const Revealed& a, const Revealed& b) {
                        return a.id == b.id;
                      }),
          s.end());

  Outcome out;
  std::optional<std::size_t> top;
  for (std::size_t k = 0; k < s.size(); ++k) {
    out.revealed.push_back(s[k].id);
    if (!top || s[k].bid > s[*top].bid) top = k;  // strict: lowest id wins ties
  }
  if (top && s[*top].bid > reserve) {
    double price = reserve;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k != *top) price = std::max(price, s[k].bid);
    }
    out.winner = s[*top].id;
    out.sale_price = price;
  }

  std::vector<AgentId> depositors;
  depositors.reserve(commitments.size());
  for (const auto& [id, c] : commitments) depositors.push_back(id);
  std::sort(depositors.begin(), depositors.end());
  depositors.erase(std::unique(depositors.begin(), depositors.end()),
                   depositors.end());
  for (AgentId id : depositors) {
    const bool in_s = std::binary_search(out.revealed.begin(),
                                         out.revealed.end(), id);
    if (in_s) {
      out.ledger.push_back({id, id, collateral, LedgerKind::kRefund});
    } else if (top) {
      out.ledger.push_back({id, s[*top].id, collateral, LedgerKind::kTransfer});
    } else {
      out.ledger.push_back({id, std::nullopt, collateral, LedgerKind::kBurn});
    }
  }
  out.auctioneer_net = auctioneer_net(out, real_buyers);
  return out;
}

double auctioneer_net(const Outcome& outcome, std::size_t real_buyers) {
  const auto is_false = [&](AgentId id) { return id.value > real_buyers; };
  double net = 0.0;
  if (outcome.winner && !is_false(*outcome.winner)) net += outcome.sale_price;
  for (const LedgerEntry& e : outcome.ledger) {
    if (e.kind == LedgerKind::kRefund) continue;
    const bool from_false = is_false(e.from);
    const bool to_auctioneer = e.to && is_false(*e.to);
    if (from_false && !to_auctioneer) net -= e.amount;
    if (!from_false && to_auctioneer) net += e.amount;
  }
  return net;
}

Balances real_balances(const Outcome& outcome, std::size_t real_buyers) {
  Balances b;
  b.buyers.assign(real_buyers + 1, 0.0);
  const auto is_real = [&](AgentId id) {
    return id.value >= 1 && id.value <= real_buyers;
  };
  if (outcome.winner && is_real(*outcome.winner)) {
    b.buyers[outcome.winner->value] -= outcome.sale_price;
  }
  for (const LedgerEntry& e : outcome.ledger) {
    if (is_real(e.from)) b.buyers[e.from.value] -= e.amount;  // deposit
    if (e.to && is_real(*e.to)) b.buyers[e.to->value] += e.amount;
    if (e.kind == LedgerKind::kBurn) b.burned += e.amount;
  }
  return b;
}

bool money_conserved(const Outcome& outcome, std::size_t real_buyers,
                     std::span<const AgentId> depositors, double tol) {
  for (AgentId d : depositors) {
    const auto hits = std::count_if(
        outcome.ledger.begin(), outcome.ledger.end(),
        [&](const LedgerEntry& e) { return e.from == d; });
    if (hits != 1) return false;
  }
  if (outcome.ledger.size() != depositors.size()) return false;
  const Balances b = real_balances(outcome, real_buyers);
  double total = outcome.auctioneer_net + b.burned;
  for (double x : b.buyers) total += x;
  return std::abs(total) <= tol;
}

double buyer_utility(const Outcome& outcome, AgentId buyer, double value) {
  double u = 0.0;
  if (outcome.winner == buyer) u += value - outcome.sale_price;
  for (const LedgerEntry& e : outcome.ledger) {
    if (e.kind == LedgerKind::kRefund) continue;
    if (e.from == buyer) u -= e.amount;
    if (e.to == buyer) u += e.amount;
  }
  return u;
}

nlohmann::ordered_json to_json(const Outcome& outcome) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["winner"] = outcome.winner ? ordered_json(outcome.winner->value) : ordered_json();
  j["sale_price"] = outcome.sale_price;
  ordered_json revealed = ordered_json::array();
  for (AgentId id : outcome.revealed) revealed.push_back(id.value);
  j["revealed"] = revealed;
  ordered_json ledger = ordered_json::array();
  for (const LedgerEntry& e : outcome.ledger) {
    ordered_json row;
    row["from"] = e.from.value;
    row["to"] = e.to ? ordered_json(e.to->value) : ordered_json("BURN");
    row["amount"] = e.amount;
    row["kind"] = e.kind == LedgerKind::kRefund     ? "refund"
                  : e.kind == LedgerKind::kTransfer ? "transfer"
                                                    : "burn";
    ledger.push_back(row);
  }
  j["ledger"] = ledger;
  j["auctioneer_net"] = outcome.auctioneer_net;
  return j;
}

}  // namespace dra
