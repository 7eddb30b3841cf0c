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

#include "dra/mc.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dra/errors.h"

namespace dra {
namespace {

void check_samples(std::size_t samples) {
  if (samples < kMinRevenueSamples) {
    throw std::invalid_argument("at least 1000 samples are required, got " +
                                std::to_string(samples));
  }
}

// Draws a truthful value profile for sample `index` and returns the stream
// left over for commitment randomness.
Rng draw_profile(const AuctionConfig& config, std::uint64_t seed,
                 std::uint64_t index, std::vector<BuyerStrategy>& buyers) {
  Rng rng(derive_seed(seed, index));
  buyers.resize(config.n);
  for (BuyerStrategy& b : buyers) {
    b = BuyerStrategy::truthful(config.distribution.sample(rng));
  }
  return rng;
}

double real_virtual_welfare(const Outcome& outcome,
                            const std::vector<BuyerStrategy>& buyers,
                            const ValueDistribution& dist) {
  if (!outcome.winner || outcome.winner->value < 1 ||
      outcome.winner->value > buyers.size()) {
    return 0.0;
  }
  return virtual_value(dist, buyers[outcome.winner->value - 1].value);
}

}  // namespace

RevenueStudy study_revenue(const AuctionConfig& config,
                           const AuctioneerStrategy& strategy,
                           std::size_t samples, std::uint64_t seed,
                           StudyOptions options) {
  check_samples(samples);
  std::vector<double> revenue(samples);
  std::vector<double> welfare;
  std::vector<double> gap;
  if (options.virtual_welfare) {
    welfare.resize(samples);
    gap.resize(samples);
  }
  RevenueStudy study;
  std::vector<BuyerStrategy> buyers;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = draw_profile(config, seed, i, buyers);
    const RunResult run = run_auction(config, buyers, strategy, rng, i);
    revenue[i] = run.outcome.auctioneer_net;
    if (!money_conserved(run.outcome, config.n, run.depositors)) {
      if (study.conservation_failures++ == 0 && study.first_failure.empty()) {
        study.first_failure = "money not conserved on sample " + std::to_string(i);
      }
    }
    if (i < options.audit_runs) {
      ++study.audited;
      const AuditReport audit = audit_run(run, config);
      if (!audit.ok()) {
        if (study.audit_failures++ == 0 && study.first_failure.empty()) {
          study.first_failure =
              "sample " + std::to_string(i) + ": " + audit.failure;
        }
      }
    }
    if (options.virtual_welfare) {
      welfare[i] = real_virtual_welfare(run.outcome, buyers, config.distribution);
      gap[i] = revenue[i] - welfare[i];
    }
  }
  study.revenue = Estimate::from_samples(revenue);
  if (options.virtual_welfare) {
    study.virtual_welfare = Estimate::from_samples(welfare);
    study.identity_gap = Estimate::from_samples(gap);
  }
  return study;
}

Estimate estimate_revenue(const AuctionConfig& config,
                          const AuctioneerStrategy& strategy,
                          std::size_t samples, std::uint64_t seed) {
  return study_revenue(config, strategy, samples, seed).revenue;
}

Estimate compare_revenue(const AuctionConfig& config,
                         const AuctioneerStrategy& a,
                         const AuctioneerStrategy& b, std::size_t samples,
                         std::uint64_t seed) {
  check_samples(samples);
  std::vector<double> diff(samples);
  std::vector<BuyerStrategy> buyers;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng = draw_profile(config, seed, i, buyers);
    Rng rng_b = rng;
    const double net_a = run_auction(config, buyers, a, rng, i).outcome.auctioneer_net;
    const double net_b = run_auction(config, buyers, b, rng_b, i).outcome.auctioneer_net;
    diff[i] = net_a - net_b;
  }
  return Estimate::from_samples(diff);
}

AdaptiveGainStudy study_adaptive_gain(const ValueDistribution& dist,
                                      double threshold, double collateral,
                                      std::size_t samples, std::uint64_t seed,
                                      std::size_t audit_runs) {
  const AuctionConfig config =
      AuctionConfig::make(dist, 2, collateral, Mode::kCentralized);
  if (!(threshold >= config.reserve - kRootTolerance)) {
    std::ostringstream os;
    os << "threshold " << threshold << " is below the reserve " << config.reserve;
    throw std::invalid_argument(os.str());
  }
  AdaptiveGainStudy study;
  study.tail_probability =
      std::isinf(threshold) ? 0.0 : dist.tail_probability(threshold);
  if (study.tail_probability == 0.0) {
    study.gain = Estimate::exact(0.0);
    return study;
  }
  check_samples(samples);
  const AuctioneerStrategy honest = Lifted{Honest{}};
  std::vector<double> delta(samples);
  std::vector<BuyerStrategy> buyers(2);
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    buyers[0] = BuyerStrategy::truthful(dist.sample_tail(threshold, rng));
    buyers[1] = BuyerStrategy::truthful(dist.sample(rng));
    Rng honest_rng = rng;
    const RunResult attack = adaptive_reserve_play(config, buyers, threshold, rng);
    const RunResult base = run_auction(config, buyers, honest, honest_rng, i);
    delta[i] = attack.outcome.auctioneer_net - base.outcome.auctioneer_net;
    if (i < audit_runs) {
      ++study.audited;
      const AuditReport audit = audit_run(attack, config);
      if (!audit.ok() && study.audit_failures++ == 0) {
        study.first_failure = "sample " + std::to_string(i) + ": " + audit.failure;
      }
    }
  }
  study.gain = Estimate::from_samples(delta).scaled(study.tail_probability);
  return study;
}

Estimate estimate_adaptive_gain(const ValueDistribution& dist,
                                double threshold, double collateral,
                                std::size_t samples, std::uint64_t seed) {
  return study_adaptive_gain(dist, threshold, collateral, samples, seed).gain;
}

double adaptive_gain_quadrature(const ValueDistribution& dist,
                                double threshold, double collateral) {
  const double r = finite_reserve(dist);
  if (!(threshold >= r - kRootTolerance)) {
    throw std::invalid_argument("threshold below the reserve");
  }
  if (std::isinf(threshold)) return 0.0;
  const double top = dist.tail_probability(threshold);
  if (top == 0.0 || collateral == 0.0) return 0.0;
  const double f = collateral;
  // s = Pr[v > v_A]; Pr[v > v_A + f] - (s - Pr[v > v_A + f]).
  auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double v = dist.upper_quantile(s);
    return f * (2.0 * dist.survival(v + f) - s);
  };
  // The integrand is smooth, so depth 10 is ample; deeper bisection only
  // chases rounding noise when the 1e-12 relative target is out of reach.
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          integrand, 0.0, top, 10, 1e-12, &error);
  if (!(error <= 1e-8)) {
    std::ostringstream os;
    os << "adaptive gain quadrature error " << error << " above 1e-8";
    throw ToleranceError(os.str());
  }
  return value;
}

std::vector<AuctioneerStrategy> default_deviation_grid(std::size_t points,
                                                       std::uint64_t seed) {
  std::vector<AuctioneerStrategy> grid;
  const double hi = 0.95, lo = 1e-4;
  for (RevealPolicy policy :
       {RevealPolicy::kAlwaysReveal, RevealPolicy::kWithholdIfOutbid}) {
    for (std::size_t k = 0; k < points; ++k) {
      const double t = points > 1 ? static_cast<double>(k) / (points - 1) : 0.0;
      const double tail = hi * std::pow(lo / hi, t);
      grid.push_back(ShillBroadcast{{FalseBidRule::quantile(1.0 - tail)}, policy, seed});
    }
  }
  grid.push_back(Honest{});
  return grid;
}

CredibilityReport credibility_suite(const ValueDistribution& dist,
                                    double alpha, std::size_t n,
                                    const std::vector<AuctioneerStrategy>& grid,
                                    std::size_t samples, std::uint64_t seed,
                                    CredibilityOptions options) {
  CredibilityReport report;
  report.exploratory = options.collateral_override.has_value();
  report.collateral = options.collateral_override.value_or(collateral(dist, n, alpha));
  report.optimal_revenue = optimal_revenue(dist, n).mean;
  const AuctionConfig config =
      AuctionConfig::make(dist, n, report.collateral, Mode::kBroadcast);
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const AuctioneerStrategy& strategy : grid) {
    StudyOptions so;
    so.audit_runs = options.audit_runs;
    const RevenueStudy study = study_revenue(config, strategy, samples, seed, so);
    CredibilityEntry e;
    e.strategy = describe(strategy);
    e.revenue = study.revenue;
    e.audit_failures = study.audit_failures;
    e.conservation_failures = study.conservation_failures;
    const double slack = 3.0 * study.revenue.std_error;
    e.margin = report.optimal_revenue + slack - study.revenue.mean;
    const bool excess = e.margin < 0.0;
    if (std::holds_alternative<Honest>(strategy)) {
      e.margin = std::min(e.margin,
                          study.revenue.mean - (report.optimal_revenue - slack));
    }
    e.pass = e.margin >= 0.0 && study.invariants_ok();
    report.flags_excess = report.flags_excess || excess;
    report.all_pass = report.all_pass && e.pass;
    if (e.margin < report.worst_margin) {
      report.worst_margin = e.margin;
      report.worst_strategy = e.strategy;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace dra
