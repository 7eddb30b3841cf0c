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

#include "cli/commands.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "dra/auction.h"
#include "dra/errors.h"
#include "dra/mc.h"

namespace dra::cli {
namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

constexpr const char* kCsvHeader =
    "strategy,param,mean,std_error,samples,ci_lo,ci_hi,verdict";

std::string csv_row(const std::string& strategy, const std::string& param,
                    const Estimate& e, const std::string& verdict) {
  return strategy + "," + param + "," + fmt(e.mean) + "," + fmt(e.std_error) +
         "," + std::to_string(e.samples) + "," + fmt(e.ci_lo) + "," +
         fmt(e.ci_hi) + "," + verdict;
}

// CSV-safe label: commas would split the field.
std::string csv_field(std::string s) {
  for (char& c : s) {
    if (c == ',') c = ';';
  }
  return s;
}

ojson nullable(double x) {
  return std::isfinite(x) ? ojson(x) : ojson(nullptr);
}

std::vector<BuyerStrategy> materialize(const StrategySpec& spec,
                                       const ExperimentConfig& config,
                                       Rng& rng) {
  std::vector<BuyerStrategy> buyers;
  for (std::size_t i = 0; i < config.n; ++i) {
    const BuyerSpec b = spec.buyers.empty() ? BuyerSpec{} : spec.buyers[i];
    const double v = b.value ? *b.value : config.distribution.sample(rng);
    switch (b.kind) {
      case BuyerKind::kTruthful:
        buyers.push_back(BuyerStrategy::truthful(v));
        break;
      case BuyerKind::kFixedBid:
        buyers.push_back(BuyerStrategy::fixed(v, b.bid));
        break;
      case BuyerKind::kNoReveal:
        buyers.push_back(BuyerStrategy::no_reveal(v));
        break;
    }
  }
  return buyers;
}

ojson config_json(const ExperimentConfig& config, const AuctionConfig& ac) {
  ojson j;
  j["distribution"] = config.distribution.name();
  j["n"] = config.n;
  j["mode"] = std::string(to_string(config.mode));
  j["scheme"] = config.scheme == SchemeKind::kHash ? "hash" : "ideal";
  j["reserve"] = ac.reserve;
  j["collateral"] = ac.collateral;
  j["seed"] = config.seed;
  return j;
}

// --- verify -----------------------------------------------------------------

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  void line(bool pass, const std::string& name, const std::string& detail) {
    out_ << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    if (!pass) {
      ++failures_;
      if (first_failure_.empty()) first_failure_ = name;
    }
  }
  void skip(const std::string& name, const std::string& why) {
    out_ << "SKIP " << name << ": " << why << "\n";
  }
  int failures() const { return failures_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
  std::string first_failure_;
};

std::vector<double> alpha_grid(double alpha_hat) {
  std::vector<double> out;
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    if (a <= alpha_hat + kAlphaTolerance) out.push_back(a);
  }
  return out;
}

std::vector<double> price_grid(double r) {
  std::vector<double> out;
  for (int j = 0; j <= 30; ++j) out.push_back(r * std::pow(10.0, j / 10.0));
  return out;
}

void verify_bounds(const ExperimentConfig& config, Report& report) {
  const ValueDistribution& d = config.distribution;
  const double alpha_hat = strong_regularity_alpha(d).alpha_hat;
  const std::vector<double> alphas = alpha_grid(alpha_hat);
  if (alphas.empty()) {
    report.skip("tail_bound", "no alpha in (0, 1) below alpha-hat");
    report.skip("posted_price_bound", "no alpha in (0, 1) below alpha-hat");
  } else {
    const double r = finite_reserve(d);
    int points = 0, tail_bad = 0, posted_bad = 0;
    for (double a : alphas) {
      for (double p : price_grid(r)) {
        ++points;
        if (!check_tail_bound(d, a, p).holds) ++tail_bad;
        if (!check_posted_price_bound(d, a, p).holds) ++posted_bad;
      }
    }
    report.line(tail_bad == 0, "tail_bound",
                std::to_string(points - tail_bad) + "/" + std::to_string(points) +
                    " (alpha, p) points hold");
    report.line(posted_bad == 0, "posted_price_bound",
                std::to_string(points - posted_bad) + "/" +
                    std::to_string(points) + " (alpha, p) points hold");
  }

  const double a = effective_alpha(config);
  if (!(a > 0.0)) {
    report.skip("conditional_bound", "alpha is not positive");
    return;
  }
  const double alpha = std::min(a, 1.0);
  Rng rng(derive_seed(config.seed, 101));
  bool ok = true;
  std::string detail;
  for (double u : {0.0, 0.9, 0.99}) {
    const double t = u == 0.0 ? finite_reserve(d) : d.quantile(u);
    const StatisticalBoundCheck c =
        check_conditional_bound(d, alpha, t, config.samples, rng);
    ok = ok && c.holds;
    detail += (detail.empty() ? "" : "; ") + std::string("t=") + fmt(t) +
              " lhs=" + fmt(c.lhs) + " rhs=" + fmt(c.rhs);
  }
  report.line(ok, "conditional_bound", detail);
}

void verify_revenue(const ExperimentConfig& config, const AuctionConfig& base,
                    Report& report) {
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    AuctionConfig ac = base;
    ac.n = n;
    StudyOptions options;
    options.virtual_welfare = true;
    options.audit_runs = std::min<std::size_t>(config.samples, 1000);
    const RevenueStudy s =
        study_revenue(ac, Honest{}, config.samples, config.seed, options);
    const double rev = optimal_revenue(config.distribution, n).mean;
    const std::string tag = "[n=" + std::to_string(n) + "]";
    report.line(std::abs(s.revenue.mean - rev) <= 3.0 * s.revenue.std_error,
                "optimality" + tag,
                "estimate " + fmt(s.revenue.mean) + " +- " +
                    fmt(s.revenue.std_error) + " vs Rev " + fmt(rev));
    report.line(std::abs(s.identity_gap.mean) <= 3.0 * s.identity_gap.std_error,
                "myerson_identity" + tag,
                "revenue - virtual welfare = " + fmt(s.identity_gap.mean) +
                    " +- " + fmt(s.identity_gap.std_error));
    report.line(s.invariants_ok(), "run_invariants" + tag,
                s.invariants_ok() ? std::to_string(s.audited) + " audited runs"
                                  : s.first_failure);
  }
}

void verify_strategyproofness(const ExperimentConfig& config,
                              const AuctionConfig& ac, Report& report) {
  constexpr int kProfiles = 50;
  int cases = 0, bad = 0;
  for (int k = 0; k < kProfiles; ++k) {
    Rng rng(derive_seed(config.seed, 1000 + k));
    std::vector<BuyerStrategy> buyers;
    for (std::size_t i = 0; i < ac.n; ++i) {
      buyers.push_back(BuyerStrategy::truthful(config.distribution.sample(rng)));
    }
    Rng base_rng = rng;
    const Outcome truthful = run_auction(ac, buyers, Honest{}, base_rng).outcome;
    for (std::size_t i = 0; i < ac.n; ++i) {
      const double v = buyers[i].value;
      const AgentId me{static_cast<std::uint32_t>(i + 1)};
      const double honest_u = buyer_utility(truthful, me, v);
      for (int j = 0; j <= 20; ++j) {
        std::vector<BuyerStrategy> dev = buyers;
        dev[i] = BuyerStrategy::fixed(v, v * j / 10.0);
        Rng dev_rng = rng;
        const Outcome o = run_auction(ac, dev, Honest{}, dev_rng).outcome;
        ++cases;
        if (buyer_utility(o, me, v) > honest_u) ++bad;
      }
    }
  }
  report.line(bad == 0, "strategyproofness",
              std::to_string(cases - bad) + "/" + std::to_string(cases) +
                  " unilateral deviations no better than truthful");
}

void verify_lift_and_coupling(const ExperimentConfig& config,
                              const AuctionConfig& ac, Report& report) {
  const ShillBroadcast shill{{FalseBidRule::random_quantile(0.5, 0.99)},
                             RevealPolicy::kWithholdIfOutbid, config.seed};
  AuctionConfig broadcast = ac;
  broadcast.mode = Mode::kBroadcast;
  // Ideal nonces carry no randomness; hash commitments make the coupling
  // comparison meaningful.
  broadcast.scheme = SchemeKind::kHash;
  int mismatches = 0, coupling = 0;
  constexpr int kRuns = 100;
  for (int k = 0; k < kRuns; ++k) {
    std::vector<BuyerStrategy> buyers;
    Rng rng(derive_seed(config.seed, 5000 + k));
    for (std::size_t i = 0; i < ac.n; ++i) {
      buyers.push_back(BuyerStrategy::truthful(config.distribution.sample(rng)));
    }
    for (const AuctioneerStrategy& s :
         {AuctioneerStrategy{Honest{}}, AuctioneerStrategy{shill}}) {
      const StrategyProfile lifted = lift_to_centralized(broadcast, s);
      Rng a = rng, b = rng;
      const RunResult x = run_auction(broadcast, buyers, s, a, k);
      const RunResult y = run_auction(lifted.config, buyers, lifted.auctioneer, b, k);
      if (!(x.outcome == y.outcome)) ++mismatches;
    }
    // Same strategy stream, different values: identical false commitments.
    std::vector<BuyerStrategy> other = buyers;
    for (BuyerStrategy& b : other) b.value = b.value * 2.0 + 1.0;
    Rng a = rng, b = rng;
    const RunResult x = run_auction(broadcast, buyers, shill, a, k);
    const RunResult y = run_auction(broadcast, other, shill, b, k);
    auto false_commits = [&](const RunResult& r) {
      std::vector<std::string> out;
      for (const Message& m : r.channel.transcript()) {
        if (const auto* c = std::get_if<CommitMsg>(&m.payload)) {
          if (broadcast.is_false_buyer(c->id)) out.push_back(c->commitment.to_string());
        }
      }
      return out;
    };
    if (false_commits(x) != false_commits(y)) ++coupling;
  }
  report.line(mismatches == 0, "lift_equality",
              std::to_string(2 * kRuns - mismatches) + "/" +
                  std::to_string(2 * kRuns) + " paired runs with equal outcomes");
  report.line(coupling == 0, "false_bid_coupling",
              std::to_string(kRuns - coupling) + "/" + std::to_string(kRuns) +
                  " identical false commitments");
}

void verify_credibility(const ExperimentConfig& config, double alpha,
                        Report& report) {
  CredibilityOptions options;
  options.audit_runs = std::min<std::size_t>(config.samples, 1000);
  options.collateral_override = config.collateral;
  const CredibilityReport c = credibility_suite(
      config.distribution, alpha, config.n, default_deviation_grid(20, config.seed),
      config.samples, config.seed, options);
  std::size_t audit = 0;
  for (const CredibilityEntry& e : c.entries) {
    audit += e.audit_failures + e.conservation_failures;
  }
  report.line(c.all_pass, "credibility",
              std::to_string(c.entries.size()) + " deviations, f=" +
                  fmt(c.collateral) + ", Rev=" + fmt(c.optimal_revenue) +
                  ", worst margin " + fmt(c.worst_margin) + " (" +
                  c.worst_strategy + ")" +
                  (audit ? ", " + std::to_string(audit) + " invariant failures" : ""));
}

}  // namespace

int cmd_dist(const ExperimentConfig& config, std::ostream& out, std::ostream&) {
  const ValueDistribution& d = config.distribution;
  ojson j;
  j["distribution"] = d.name();
  const ReservePrice r = reserve_price(d);
  j["reserve"] = r.infinite ? ojson(nullptr) : ojson(r.value);
  j["reserve_infinite"] = r.infinite;
  const RegularityReport reg = strong_regularity_alpha(d);
  j["alpha_hat"] = nullable(reg.alpha_hat);
  j["is_regular"] = reg.is_regular;
  j["is_mhr"] = reg.is_mhr;
  ojson phi = ojson::array();
  if (d.is_continuous()) {
    for (double u : {0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99, 0.999}) {
      const double x = d.quantile(u);
      phi.push_back({{"quantile", u}, {"x", x}, {"phi", virtual_value(d, x)}});
    }
  }
  j["phi"] = phi;
  ojson revenue, collateral_by_n;
  std::optional<double> alpha;
  if (!r.infinite) {
    ExperimentConfig c = config;
    c.collateral.reset();
    const double a = effective_alpha(c);
    if (a > 0.0) alpha = a;
  }
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    const std::string key = std::to_string(n);
    revenue[key] = r.infinite ? ojson(nullptr) : ojson(optimal_revenue(d, n).mean);
    collateral_by_n[key] =
        alpha ? ojson(collateral(d, n, *alpha)) : ojson(nullptr);
  }
  j["alpha_used"] = alpha ? ojson(*alpha) : ojson(nullptr);
  j["revenue"] = revenue;
  j["collateral"] = collateral_by_n;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream&) {
  const AuctionConfig ac = auction_config(config);
  const StrategySpec& spec = config.strategies.front();
  Rng rng(derive_seed(config.seed, 0));
  const std::vector<BuyerStrategy> buyers = materialize(spec, config, rng);
  const RunResult run = run_auction(ac, buyers, spec.auctioneer, rng, 0);
  const AuditReport audit = audit_run(run, ac);

  ojson j;
  j["config"] = config_json(config, ac);
  j["strategy"] = spec.label;
  ojson values = ojson::array();
  for (const BuyerStrategy& b : buyers) values.push_back(b.value);
  j["values"] = values;
  const ojson body = run_to_json(run);
  j["outcome"] = body["outcome"];
  j["transcript"] = body["transcript"];
  j["audit"] = {{"money_conserved", audit.money_conserved},
                {"single_candidate", audit.single_candidate},
                {"safe_allocation", audit.safe_allocation},
                {"views_consistent", audit.views_consistent}};
  if (!audit.ok()) j["audit"]["failure"] = audit.failure;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_estimate(const ExperimentConfig& config, std::ostream& out,
                 std::ostream&) {
  const AuctionConfig ac = auction_config(config);
  for (const StrategySpec& s : config.strategies) {
    if (!s.buyers.empty()) {
      throw ConfigError("estimate draws truthful buyers; strategy \"" + s.label +
                        "\" must not list buyers");
    }
  }
  const double rev = optimal_revenue(config.distribution, config.n).mean;
  const std::string param = "n=" + std::to_string(config.n) + ";f=" +
                            fmt(ac.collateral) + ";mode=" +
                            std::string(to_string(config.mode));
  out << kCsvHeader << "\n";
  int status = kExitOk;
  for (const StrategySpec& s : config.strategies) {
    const RevenueStudy study =
        study_revenue(ac, s.auctioneer, config.samples, config.seed,
                      StudyOptions{false, std::min<std::size_t>(config.samples, 1000)});
    std::string verdict = study.revenue.mean <= rev + 3.0 * study.revenue.std_error
                              ? "within_optimal"
                              : "exceeds_optimal";
    if (!study.invariants_ok()) {
      verdict = "invariant_failure";
      status = kExitCheckFailed;
    }
    out << csv_row(csv_field(s.label), param, study.revenue, verdict) << "\n";
  }
  return status;
}

int cmd_attack(const ExperimentConfig& config, std::ostream& out,
               std::ostream& err) {
  if (config.n != 2) throw ConfigError("attack needs n = 2");
  const double f = effective_collateral(config);
  std::vector<double> thresholds = config.thresholds;
  if (thresholds.empty()) thresholds = {2, 5, 10, 20, 50, 100};
  const double r = finite_reserve(config.distribution);
  for (double t : thresholds) {
    if (!(t >= r - kRootTolerance)) {
      throw ConfigError("threshold " + fmt(t) + " is below the reserve " + fmt(r));
    }
  }
  out << kCsvHeader << ",quadrature\n";
  std::vector<double> profitable;
  int status = kExitOk;
  for (double t : thresholds) {
    const AdaptiveGainStudy s =
        study_adaptive_gain(config.distribution, t, f, config.samples,
                            config.seed, std::min<std::size_t>(config.samples, 1000));
    const double q = adaptive_gain_quadrature(config.distribution, t, f);
    std::string verdict =
        s.gain.mean > 3.0 * s.gain.std_error ? "profitable" : "not_profitable";
    if (s.audit_failures) {
      verdict = "invariant_failure";
      status = kExitCheckFailed;
    }
    if (verdict == "profitable") profitable.push_back(t);
    out << csv_row("adaptive", "T=" + fmt(t) + ";f=" + fmt(f), s.gain, verdict)
        << "," << fmt(q) << "\n";
  }
  if (profitable.empty()) {
    err << "no profitable T found\n";
  } else {
    err << "profitable T found:";
    for (double t : profitable) err << " " << fmt(t);
    err << "\n";
  }
  return status;
}

int cmd_verify(const ExperimentConfig& config, std::ostream& out,
               std::ostream& err) {
  Report report(out);
  out << "distribution " << config.distribution.name() << ", n=" << config.n
      << ", samples=" << config.samples << ", seed=" << config.seed << "\n";
  const AuctionConfig ac = auction_config(config);
  const double alpha = effective_alpha(config);
  verify_bounds(config, report);
  verify_revenue(config, ac, report);
  verify_strategyproofness(config, ac, report);
  verify_lift_and_coupling(config, ac, report);
  verify_credibility(config, alpha, report);
  if (report.failures() > 0) {
    err << "verify: " << report.failures() << " check(s) failed, first: "
        << report.first_failure() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace dra::cli
