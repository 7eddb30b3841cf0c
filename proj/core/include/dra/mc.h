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
#include <string>
#include <vector>

#include "dra/auction.h"
#include "dra/dist.h"
#include "dra/estimate.h"
#include "dra/protocol.h"
#include "dra/strategy.h"

namespace dra {

// Sample i draws every buyer value (truthful bids) from its own stream
// derive_seed(seed, i) and passes i as the strategy stream, so estimates are
// reproducible and independent of evaluation order.
inline constexpr std::size_t kMinRevenueSamples = 1000;

struct StudyOptions {
  bool virtual_welfare = false;  // also track sum phi(v_i) x_i
  // Full audit (views, single candidate, safe allocation) on the first
  // `audit_runs` samples. Money conservation is checked on every sample.
  std::size_t audit_runs = 0;
};

struct RevenueStudy {
  Estimate revenue;
  Estimate virtual_welfare;  // when requested
  Estimate identity_gap;     // paired revenue - virtual welfare
  std::size_t audited = 0;
  std::size_t audit_failures = 0;
  std::size_t conservation_failures = 0;
  std::string first_failure;

  bool invariants_ok() const {
    return audit_failures == 0 && conservation_failures == 0;
  }
};

// Expected auctioneer net over i.i.d. value profiles.
// Throws std::invalid_argument for samples < 1000.
Estimate estimate_revenue(const AuctionConfig& config,
                          const AuctioneerStrategy& strategy,
                          std::size_t samples, std::uint64_t seed);

RevenueStudy study_revenue(const AuctionConfig& config,
                           const AuctioneerStrategy& strategy,
                           std::size_t samples, std::uint64_t seed,
                           StudyOptions options = {});

// Paired estimate of revenue(a) - revenue(b) on common value profiles.
Estimate compare_revenue(const AuctionConfig& config,
                         const AuctioneerStrategy& a,
                         const AuctioneerStrategy& b, std::size_t samples,
                         std::uint64_t seed);

// --- adaptive reserve deviation ---------------------------------------------

struct AdaptiveGainStudy {
  Estimate gain;  // E[adaptive net - honest net]
  double tail_probability = 0.0;  // Pr[v_A >= T]
  std::size_t audited = 0;
  std::size_t audit_failures = 0;
  std::string first_failure;
};

// Stratified on v_A: the stratum v_A < T contributes exactly zero, the
// other is sampled by conditional inverse CDF and weighted by Pr[v_A >= T].
// Each sample runs the deviation and honest centralized play on the same
// value profile. Throws std::invalid_argument if T is below the reserve.
AdaptiveGainStudy study_adaptive_gain(const ValueDistribution& dist,
                                      double threshold, double collateral,
                                      std::size_t samples, std::uint64_t seed,
                                      std::size_t audit_runs = 0);
Estimate estimate_adaptive_gain(const ValueDistribution& dist,
                                double threshold, double collateral,
                                std::size_t samples, std::uint64_t seed);

// Same expectation by quadrature over s = Pr[v > v_A] in (0, Pr[v >= T]).
// Given v_A = v the v_B integral is closed-form,
//   f (Pr[v_B > v + f] - Pr[v < v_B <= v + f]),
// so only the outer integral is numerical. Throws ToleranceError when the
// error estimate exceeds 1e-8.
double adaptive_gain_quadrature(const ValueDistribution& dist,
                                double threshold, double collateral);

// --- credibility ----------------------------------------------------------------

// 2 * points shill strategies (one false bid at each quantile, crossed with
// reveal/withhold-if-outbid) followed by Honest. Quantiles have 1 - u
// log-spaced from 0.95 down to 1e-4.
std::vector<AuctioneerStrategy> default_deviation_grid(std::size_t points = 20,
                                                       std::uint64_t seed = 0);

struct CredibilityEntry {
  std::string strategy;
  Estimate revenue;
  double margin = 0.0;  // Rev(D^n) + 3 SE - estimate; negative is a failure
  bool pass = true;
  std::size_t audit_failures = 0;
  std::size_t conservation_failures = 0;
};

struct CredibilityReport {
  double optimal_revenue = 0.0;
  double collateral = 0.0;
  bool exploratory = false;  // pass/fail not asserted
  std::vector<CredibilityEntry> entries;
  double worst_margin = 0.0;
  std::string worst_strategy;
  bool all_pass = true;
  bool flags_excess = false;  // some deviation beat Rev(D^n) + 3 SE
};

struct CredibilityOptions {
  // When set, overrides collateral(dist, n, alpha). The report is then
  // exploratory.
  std::optional<double> collateral_override;
  std::size_t audit_runs = 0;
};

// Broadcast-mode revenue of every grid strategy against Rev(D^n).
CredibilityReport credibility_suite(const ValueDistribution& dist,
                                    double alpha, std::size_t n,
                                    const std::vector<AuctioneerStrategy>& grid,
                                    std::size_t samples, std::uint64_t seed,
                                    CredibilityOptions options = {});

}  // namespace dra
