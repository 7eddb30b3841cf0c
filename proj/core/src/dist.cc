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

#include "dra/dist.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dra/errors.h"

namespace dra {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Integral of g over (0, upper) with tanh-sinh, which tolerates the
// integrable blow-up of heavy-tailed quantiles at s -> 0.
template <typename F>
double integrate_tail(F g, double upper) {
  if (!(upper > 0.0)) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(g, 0.0, upper);
}

}  // namespace

Estimate Estimate::exact(double value) {
  return Estimate{value, 0.0, 0, value, value};
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 64;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Estimate Estimate::from_samples(std::span<const double> values) {
  Estimate e;
  e.samples = values.size();
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  e.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(), [&](double v) {
      const double d = v - e.mean;
      return d * d;
    });
    const double var = pairwise_sum(sq) / (n - 1.0);
    e.std_error = std::sqrt(var / n);
  }
  e.ci_lo = e.mean - 1.96 * e.std_error;
  e.ci_hi = e.mean + 1.96 * e.std_error;
  return e;
}

Estimate Estimate::scaled(double factor) const {
  Estimate e = *this;
  e.mean *= factor;
  e.std_error *= std::abs(factor);
  e.ci_lo = e.mean - 1.96 * e.std_error;
  e.ci_hi = e.mean + 1.96 * e.std_error;
  return e;
}

// --- ValueDistribution ------------------------------------------------------

ValueDistribution ValueDistribution::exponential(double rate) {
  require(rate > 0.0 && std::isfinite(rate), "exponential rate must be > 0");
  return ValueDistribution(Family::kExponential, {rate, 0.0}, 1);
}

ValueDistribution ValueDistribution::generalized_pareto(double shape) {
  require(shape > 0.0 && shape < 1.0, "generalized Pareto shape must be in (0, 1)");
  return ValueDistribution(Family::kGeneralizedPareto, {shape, 0.0}, 1);
}

ValueDistribution ValueDistribution::uniform(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "uniform needs finite lo < hi");
  return ValueDistribution(Family::kUniform, {lo, hi}, 2);
}

ValueDistribution ValueDistribution::equal_revenue() {
  return ValueDistribution(Family::kEqualRevenue, {0.0, 0.0}, 0);
}

ValueDistribution ValueDistribution::two_point() {
  return ValueDistribution(Family::kTwoPoint, {0.0, 0.0}, 0);
}

Support ValueDistribution::support() const {
  switch (family_) {
    case Family::kUniform:
      return {params_[0], params_[1]};
    case Family::kTwoPoint:
      return {0.0, 1.0};
    default:
      return {0.0, kInf};
  }
}

std::string ValueDistribution::name() const {
  std::ostringstream os;
  switch (family_) {
    case Family::kExponential:
      os << "exponential(rate=" << params_[0] << ")";
      break;
    case Family::kGeneralizedPareto:
      os << "gpareto(k=" << params_[0] << ")";
      break;
    case Family::kUniform:
      os << "uniform(" << params_[0] << "," << params_[1] << ")";
      break;
    case Family::kEqualRevenue:
      os << "equal_revenue";
      break;
    case Family::kTwoPoint:
      os << "two_point";
      break;
  }
  return os.str();
}

double ValueDistribution::survival(double x) const {
  switch (family_) {
    case Family::kExponential:
      return x <= 0.0 ? 1.0 : std::exp(-params_[0] * x);
    case Family::kGeneralizedPareto: {
      const double k = params_[0];
      return x <= 0.0 ? 1.0 : std::exp(-std::log1p(k * x) / k);
    }
    case Family::kUniform: {
      const double a = params_[0], b = params_[1];
      if (x <= a) return 1.0;
      if (x >= b) return 0.0;
      return (b - x) / (b - a);
    }
    case Family::kEqualRevenue:
      return x <= 0.0 ? 1.0 : 1.0 / (1.0 + x);
    case Family::kTwoPoint:
      if (x < 0.0) return 1.0;
      return x < 1.0 ? 0.5 : 0.0;
  }
  return 0.0;
}

double ValueDistribution::cdf(double x) const {
  switch (family_) {
    case Family::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-params_[0] * x);
    case Family::kGeneralizedPareto: {
      const double k = params_[0];
      return x <= 0.0 ? 0.0 : -std::expm1(-std::log1p(k * x) / k);
    }
    case Family::kEqualRevenue:
      return x <= 0.0 ? 0.0 : x / (1.0 + x);
    default:
      return 1.0 - survival(x);
  }
}

double ValueDistribution::tail_probability(double x) const {
  if (family_ == Family::kTwoPoint) {
    if (x <= 0.0) return 1.0;
    return x <= 1.0 ? 0.5 : 0.0;
  }
  return survival(x);
}

double ValueDistribution::pdf(double x) const {
  switch (family_) {
    case Family::kExponential:
      return x < 0.0 ? 0.0 : params_[0] * std::exp(-params_[0] * x);
    case Family::kGeneralizedPareto: {
      const double k = params_[0];
      return x < 0.0 ? 0.0 : std::exp(-(1.0 / k + 1.0) * std::log1p(k * x));
    }
    case Family::kUniform: {
      const double a = params_[0], b = params_[1];
      return (x < a || x > b) ? 0.0 : 1.0 / (b - a);
    }
    case Family::kEqualRevenue:
      return x < 0.0 ? 0.0 : 1.0 / ((1.0 + x) * (1.0 + x));
    case Family::kTwoPoint:
      throw UndefinedDensityError("two_point has atoms at 0 and 1; no density");
  }
  return 0.0;
}

double ValueDistribution::inverse_hazard(double x) const {
  if (!is_continuous()) {
    throw UndefinedDensityError("inverse hazard undefined for " + name());
  }
  const Support s = support();
  if (x < s.lo || x > s.hi) {
    throw UndefinedDensityError("x outside the support of " + name());
  }
  switch (family_) {
    case Family::kExponential:
      return 1.0 / params_[0];
    case Family::kGeneralizedPareto:
      return 1.0 + params_[0] * x;
    case Family::kUniform:
      return params_[1] - x;
    case Family::kEqualRevenue:
      return 1.0 + x;
    case Family::kTwoPoint:
      break;
  }
  return 0.0;
}

double ValueDistribution::quantile(double u) const {
  require(u > 0.0 && u < 1.0, "quantile needs u in (0, 1)");
  switch (family_) {
    case Family::kExponential:
      return -std::log1p(-u) / params_[0];
    case Family::kGeneralizedPareto: {
      const double k = params_[0];
      return std::expm1(-k * std::log1p(-u)) / k;
    }
    case Family::kUniform:
      return params_[0] + u * (params_[1] - params_[0]);
    case Family::kEqualRevenue:
      return u / (1.0 - u);
    case Family::kTwoPoint:
      return u <= 0.5 ? 0.0 : 1.0;
  }
  return 0.0;
}

double ValueDistribution::upper_quantile(double s) const {
  require(s > 0.0 && s < 1.0, "upper_quantile needs s in (0, 1)");
  switch (family_) {
    case Family::kExponential:
      return -std::log(s) / params_[0];
    case Family::kGeneralizedPareto: {
      const double k = params_[0];
      return std::expm1(-k * std::log(s)) / k;
    }
    case Family::kUniform:
      return params_[1] - s * (params_[1] - params_[0]);
    case Family::kEqualRevenue:
      return (1.0 - s) / s;
    case Family::kTwoPoint:
      return s >= 0.5 ? 0.0 : 1.0;
  }
  return 0.0;
}

double ValueDistribution::sample_tail(double threshold, Rng& rng) const {
  const double mass = tail_probability(threshold);
  if (!(mass > 0.0)) {
    throw std::domain_error("empty tail event above threshold");
  }
  if (mass >= 1.0) return sample(rng);
  return upper_quantile(mass * rng.uniform());
}

// --- virtual values ---------------------------------------------------------

double virtual_value(const ValueDistribution& dist, double x) {
  if (!dist.is_continuous()) {
    throw UndefinedDensityError("virtual value undefined at atoms of " +
                                dist.name());
  }
  // Closed-form hazard: the density itself underflows far in the tail.
  return x - dist.inverse_hazard(x);
}

double plus_virtual_value(const ValueDistribution& dist, double x) {
  return std::max(0.0, virtual_value(dist, x));
}

std::vector<double> default_alpha_grid(const ValueDistribution& dist) {
  constexpr std::size_t kPoints = 512;
  constexpr double kHi = 0.999;  // largest 1 - u
  constexpr double kLo = 0.001;  // smallest 1 - u
  std::vector<double> grid;
  grid.reserve(kPoints);
  const double ratio = std::log(kLo / kHi);
  for (std::size_t j = 0; j < kPoints; ++j) {
    const double s =
        kHi * std::exp(ratio * static_cast<double>(j) / (kPoints - 1));
    grid.push_back(dist.upper_quantile(s));
  }
  return grid;
}

RegularityReport strong_regularity_alpha(const ValueDistribution& dist,
                                         std::span<const double> grid) {
  if (dist.family() == Family::kTwoPoint) {
    // F jumps from 1/2 to 1 at x = 1 and is flat on (0, 1): phi(0) is finite
    // while phi(0.5) = -infinity, so phi decreases. Never regular.
    return RegularityReport{-kInf, false, false, {0.0, 0.5}};
  }
  if (grid.size() < 2) throw std::invalid_argument("degenerate grid: need >= 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("degenerate grid: points must strictly increase");
    }
  }
  // The slope between any two grid points is a weighted mean of the slopes
  // of the adjacent pairs between them, so the minimum over all pairs is
  // attained by an adjacent pair.
  double alpha = kInf;
  double prev = virtual_value(dist, grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = virtual_value(dist, grid[i]);
    alpha = std::min(alpha, (cur - prev) / (grid[i] - grid[i - 1]));
    prev = cur;
  }
  // Rounding noise in the quotients: snap to the 1e-6 grid when within 1e-9.
  const double snapped = std::round(alpha / kAlphaTolerance) * kAlphaTolerance;
  if (std::abs(alpha - snapped) <= 1e-9) alpha = snapped + 0.0;
  RegularityReport report;
  report.alpha_hat = alpha;
  report.is_regular = alpha >= -kAlphaTolerance;
  report.is_mhr = alpha >= 1.0 - kAlphaTolerance;
  report.grid.assign(grid.begin(), grid.end());
  return report;
}

RegularityReport strong_regularity_alpha(const ValueDistribution& dist) {
  if (!dist.is_continuous()) return strong_regularity_alpha(dist, {});
  const auto grid = default_alpha_grid(dist);
  return strong_regularity_alpha(dist, grid);
}

// --- reserve price ----------------------------------------------------------

ReservePrice reserve_price(const ValueDistribution& dist) {
  if (!strong_regularity_alpha(dist).is_regular) {
    throw NonRegularError(dist.name() + " is not regular; no Myerson reserve");
  }
  double lo = dist.support().lo;
  double hi = dist.quantile(1.0 - 1e-12);
  if (virtual_value(dist, lo) >= 0.0) return {lo, false};
  if (virtual_value(dist, hi) < 0.0) return {kInf, true};
  for (int it = 0; it < 200 && hi - lo > kRootTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (virtual_value(dist, mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, false};
}

double finite_reserve(const ValueDistribution& dist) {
  const ReservePrice r = reserve_price(dist);
  if (r.infinite) {
    throw InfiniteReserveError(dist.name() +
                               " has no finite reserve (virtual value < 0)");
  }
  return r.value;
}

// --- revenue ----------------------------------------------------------------

Estimate optimal_revenue(const ValueDistribution& dist, std::size_t n,
                         RevenueMethod method, MonteCarloBudget budget) {
  if (n == 0) return Estimate::exact(0.0);
  const double r = finite_reserve(dist);
  if (method == RevenueMethod::kAuto) {
    method = n <= 4 ? RevenueMethod::kQuadrature : RevenueMethod::kMonteCarlo;
  }
  if (method == RevenueMethod::kQuadrature) {
    // E[max phi+] = integral over the top order statistic's quantile. With
    // s = 1 - u the density of the maximum is n (1 - s)^(n-1).
    const double nn = static_cast<double>(n);
    auto g = [&](double s) {
      return virtual_value(dist, dist.upper_quantile(s)) * nn *
             std::pow(1.0 - s, nn - 1.0);
    };
    return Estimate::exact(integrate_tail(g, dist.survival(r)));
  }
  require(budget.samples >= 2, "Monte Carlo revenue needs >= 2 samples");
  std::vector<double> values(budget.samples);
  for (std::size_t i = 0; i < budget.samples; ++i) {
    Rng rng(derive_seed(budget.seed, i));
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      best = std::max(best, plus_virtual_value(dist, dist.sample(rng)));
    }
    values[i] = best;
  }
  return Estimate::from_samples(values);
}

double collateral(const ValueDistribution& dist, std::size_t n, double alpha) {
  require(alpha > 0.0, "collateral needs alpha > 0");
  require(n >= 1, "collateral needs n >= 1");
  const double r = finite_reserve(dist);
  if (alpha >= 1.0) return r;
  const double nn = static_cast<double>(n);
  return r * std::pow(nn / alpha, (1.0 - alpha) / alpha) *
         std::pow(1.0 / (1.0 - alpha), 1.0 / alpha);
}

double tail_bound_factor(double alpha, double reserve, double p) {
  require(alpha > 0.0 && alpha < 1.0, "tail bound needs alpha in (0, 1)");
  const double e = 1.0 / (1.0 - alpha);
  return std::pow(e, e) * std::pow(reserve / p, alpha * e);
}

BoundCheck check_tail_bound(const ValueDistribution& dist, double alpha,
                            double p) {
  const double r = finite_reserve(dist);
  require(p >= r - kRootTolerance, "tail bound needs p >= r(D)");
  BoundCheck c;
  c.lhs = p * dist.tail_probability(p);
  c.rhs = r * dist.tail_probability(r) * tail_bound_factor(alpha, r, p);
  c.holds = c.lhs <= c.rhs + kInequalitySlack;
  return c;
}

double posted_price_virtual_welfare(const ValueDistribution& dist, double p) {
  const double lo = dist.support().lo;
  const double upper = p <= lo ? 1.0 : dist.survival(p);
  auto g = [&](double s) { return virtual_value(dist, dist.upper_quantile(s)); };
  return integrate_tail(g, upper);
}

BoundCheck check_posted_price_bound(const ValueDistribution& dist,
                                    double alpha, double p) {
  const double r = finite_reserve(dist);
  require(p >= r - kRootTolerance, "posted-price bound needs p >= r(D)");
  BoundCheck c;
  c.lhs = posted_price_virtual_welfare(dist, p);
  c.rhs = posted_price_virtual_welfare(dist, r) * tail_bound_factor(alpha, r, p);
  c.holds = c.lhs <= c.rhs + kInequalitySlack;
  return c;
}

StatisticalBoundCheck check_conditional_bound(const ValueDistribution& dist,
                                              double alpha, double threshold,
                                              std::size_t samples, Rng& rng) {
  require(alpha > 0.0, "conditional bound needs alpha > 0");
  require(samples >= 2, "conditional bound needs >= 2 samples");
  const double r = finite_reserve(dist);
  require(threshold >= r - kRootTolerance, "conditional bound needs threshold >= r(D)");
  if (!(dist.tail_probability(threshold) > 0.0)) {
    throw std::domain_error("empty event: Pr[v >= threshold] = 0");
  }
  std::vector<double> v(samples), rhs(samples), diff(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    v[i] = dist.sample_tail(threshold, rng);
    rhs[i] = virtual_value(dist, v[i]) / alpha + r;
    diff[i] = v[i] - rhs[i];
  }
  const Estimate d = Estimate::from_samples(diff);
  StatisticalBoundCheck c;
  c.lhs = Estimate::from_samples(v).mean;
  c.rhs = Estimate::from_samples(rhs).mean;
  c.std_error = d.std_error;
  c.samples = samples;
  c.holds = d.mean <= 3.0 * d.std_error + kInequalitySlack;
  return c;
}

}  // namespace dra
