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
#include <span>

namespace dra {

// Mean of a Monte Carlo (or deterministic) computation with its standard
// error and 95% normal confidence interval.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  // Deterministic value: zero standard error, zero samples.
  static Estimate exact(double value);

  // Sample mean and stdev/sqrt(N). Summation is pairwise in index order so
  // the result depends only on the sequence of values.
  static Estimate from_samples(std::span<const double> values);

  // Same estimate multiplied by a known constant (e.g. a stratum weight).
  Estimate scaled(double factor) const;
};

// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace dra
