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

#include <cstdint>
#include <limits>

namespace dra {

// Derives an independent 64-bit seed from (seed, index). Used to give every
// Monte Carlo sample its own stream so results do not depend on the order in
// which samples are evaluated.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// SplitMix64 stream. Satisfies std::uniform_random_bit_generator, so it can
// be handed to <random> distributions as well as used directly.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform draw on the open interval (0, 1); never returns 0 or 1, so it is
  // safe to feed into a quantile function.
  double uniform();

  // Child stream keyed by `index`; does not advance this stream.
  Rng split(std::uint64_t index) const {
    return Rng(derive_seed(state_, index));
  }

 private:
  std::uint64_t state_;
};

}  // namespace dra
