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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dra/estimate.h"
#include "dra/rng.h"

namespace dra {

enum class Family {
  kExponential,
  kGeneralizedPareto,
  kUniform,
  kEqualRevenue,
  kTwoPoint,
};

struct Support {
  double lo;
  double hi;  // may be +infinity
};

// Buyer value distribution. Immutable value type; every accessor is a pure
// function of the family and its parameters.
//
//   exponential(rate)      F(x) = 1 - exp(-rate x), x >= 0
//   generalized_pareto(k)  F(x) = 1 - (1 + k x)^(-1/k), x >= 0, k in (0, 1)
//   uniform(a, b)          F(x) = (x - a) / (b - a)
//   equal_revenue()        f(x) = 1 / (1 + x)^2, x >= 0
//   two_point()            mass 1/2 at 0 and 1/2 at 1
class ValueDistribution {
 public:
  static ValueDistribution exponential(double rate);
  static ValueDistribution generalized_pareto(double shape);
  static ValueDistribution uniform(double lo, double hi);
  static ValueDistribution equal_revenue();
  static ValueDistribution two_point();

  Family family() const { return family_; }
  std::span<const double> params() const {
    return std::span<const double>(params_.data(), param_count_);
  }
  Support support() const;
  bool is_continuous() const { return family_ != Family::kTwoPoint; }
  std::string name() const;

  double cdf(double x) const;
  // 1 - F(x), evaluated without cancellation in the upper tail.
  double survival(double x) const;
  // Pr[v >= x]; differs from survival() only at atoms.
  double tail_probability(double x) const;
  // Throws UndefinedDensityError for families with atoms.
  double pdf(double x) const;
  // (1 - F(x)) / f(x) in closed form; throws where the density is undefined
  // or zero.
  double inverse_hazard(double x) const;

  // inf{x : F(x) >= u} for u in (0, 1).
  double quantile(double u) const;
  // quantile(1 - s), accurate for tiny s.
  double upper_quantile(double s) const;

  // Inverse-CDF sampling: quantile(rng.uniform()).
  double sample(Rng& rng) const { return quantile(rng.uniform()); }
  // Draw conditioned on v >= threshold, by inverse CDF restricted to the tail.
  double sample_tail(double threshold, Rng& rng) const;

  friend bool operator==(const ValueDistribution&,
                         const ValueDistribution&) = default;

 private:
  ValueDistribution(Family family, std::array<double, 2> params,
                    std::size_t count)
      : family_(family), params_(params), param_count_(count) {}

  Family family_;
  std::array<double, 2> params_;
  std::size_t param_count_;
};

// x - (1 - F(x)) / f(x).
double virtual_value(const ValueDistribution& dist, double x);
// max{0, virtual_value}.
double plus_virtual_value(const ValueDistribution& dist, double x);

struct ReservePrice {
  double value;   // +infinity when `infinite`
  bool infinite;  // virtual value never reaches 0 on the support
};

// inf{x : phi(x) >= 0} by bisection on [support.lo, quantile(1 - 1e-12)].
// Throws NonRegularError for non-regular families.
ReservePrice reserve_price(const ValueDistribution& dist);
// Same, but throws InfiniteReserveError instead of flagging.
double finite_reserve(const ValueDistribution& dist);

inline constexpr double kRootTolerance = 1e-9;
inline constexpr double kAlphaTolerance = 1e-6;
inline constexpr double kInequalitySlack = 1e-12;

struct RegularityReport {
  double alpha_hat;  // -infinity when phi is undefined somewhere
  bool is_regular;
  bool is_mhr;
  std::vector<double> grid;
};

// 512 quantile abscissae with 1 - u log-spaced over [0.001, 0.999], so the
// tail is sampled densely.
std::vector<double> default_alpha_grid(const ValueDistribution& dist);

// Smallest difference quotient of phi over pairs of grid points. Families
// with atoms are classified by case analysis instead (never regular).
RegularityReport strong_regularity_alpha(const ValueDistribution& dist,
                                         std::span<const double> grid);
RegularityReport strong_regularity_alpha(const ValueDistribution& dist);

enum class RevenueMethod { kAuto, kQuadrature, kMonteCarlo };

struct MonteCarloBudget {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

// Rev(D^n) = E[max_i phi+(v_i)]. kAuto integrates in quantile space for
// n <= 4 and falls back to Monte Carlo above that.
Estimate optimal_revenue(const ValueDistribution& dist, std::size_t n,
                         RevenueMethod method = RevenueMethod::kAuto,
                         MonteCarloBudget budget = {});

// Per-buyer collateral that deters every safe shill deviation:
//   r (n/alpha)^((1-alpha)/alpha) (1/(1-alpha))^(1/alpha)  for alpha in (0,1)
//   r                                                      for alpha >= 1
double collateral(const ValueDistribution& dist, std::size_t n, double alpha);

// (1/(1-alpha))^(1/(1-alpha)) (r/p)^(alpha/(1-alpha)).
double tail_bound_factor(double alpha, double reserve, double p);

struct BoundCheck {
  double lhs;
  double rhs;
  bool holds;
};

// lhs = p Pr[v >= p], rhs = r Pr[v >= r] * tail_bound_factor.
BoundCheck check_tail_bound(const ValueDistribution& dist, double alpha,
                            double p);

// E[phi(v) 1{v >= p}] by quadrature over the tail.
double posted_price_virtual_welfare(const ValueDistribution& dist, double p);

// lhs = E[phi(v) 1{v >= p}], rhs = E[phi(v) 1{v >= r}] * tail_bound_factor,
// both sides by quadrature.
BoundCheck check_posted_price_bound(const ValueDistribution& dist,
                                    double alpha, double p);

struct StatisticalBoundCheck {
  double lhs;
  double rhs;
  double std_error;  // of the paired difference lhs - rhs
  std::size_t samples;
  bool holds;
};

// Monte Carlo check of E[v | v >= t] <= E[phi(v) | v >= t] / alpha + r,
// drawing from the tail by conditional inverse CDF.
StatisticalBoundCheck check_conditional_bound(const ValueDistribution& dist,
                                              double alpha, double threshold,
                                              std::size_t samples, Rng& rng);

}  // namespace dra
