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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dra/rng.h"

namespace dra {

inline constexpr std::size_t kDefaultSecurityBits = 128;

using Digest = std::array<std::uint8_t, 32>;

// Opaque commitment handle. The ideal scheme issues allocation-order nonces;
// the hash scheme produces a SHA-256 digest. Equality is the only meaningful
// observation before the commitment is opened.
class Commitment {
 public:
  static Commitment nonce(std::uint64_t n) { return Commitment(n); }
  static Commitment digest(const Digest& d) { return Commitment(d); }

  bool is_nonce() const { return std::holds_alternative<std::uint64_t>(handle_); }
  const std::uint64_t* as_nonce() const { return std::get_if<std::uint64_t>(&handle_); }
  const Digest* as_digest() const { return std::get_if<Digest>(&handle_); }
  // "#<nonce>" or the lowercase hex digest.
  std::string to_string() const;

  friend bool operator==(const Commitment&, const Commitment&) = default;

 private:
  explicit Commitment(std::uint64_t n) : handle_(n) {}
  explicit Commitment(const Digest& d) : handle_(d) {}

  std::variant<std::uint64_t, Digest> handle_;
};

// (bid, randomness) pair that opens a commitment. The randomness is exactly
// `security_bits` bits long.
struct Opening {
  double message = 0.0;
  std::vector<std::uint8_t> randomness;
  std::size_t security_bits = kDefaultSecurityBits;

  friend bool operator==(const Opening&, const Opening&) = default;
};

// Fresh opening for `message` with randomness drawn from `rng`.
Opening make_opening(double message, Rng& rng,
                     std::size_t security_bits = kDefaultSecurityBits);

// 64-bit IEEE-754 image of the bid, big-endian.
std::array<std::uint8_t, 8> encode_bid(double bid);

enum class SchemeKind { kIdeal, kHash };

class CommitmentScheme {
 public:
  explicit CommitmentScheme(std::size_t security_bits);
  virtual ~CommitmentScheme() = default;

  CommitmentScheme(const CommitmentScheme&) = delete;
  CommitmentScheme& operator=(const CommitmentScheme&) = delete;

  virtual SchemeKind kind() const = 0;
  std::size_t security_bits() const { return security_bits_; }

  // Throws std::invalid_argument if the randomness is not security_bits long.
  Commitment commit(const Opening& opening);

  // True iff `opening` reproduces `c`. Malformed input yields false.
  virtual bool verify(const Commitment& c, const Opening& opening) const = 0;

 protected:
  virtual Commitment do_commit(const Opening& opening) = 0;
  bool well_formed(const Opening& opening) const;

 private:
  std::size_t security_bits_;
};

// Hidden registry of openings. Handles are sequential nonces, so they carry
// no information about the committed message.
class IdealCommitmentScheme final : public CommitmentScheme {
 public:
  explicit IdealCommitmentScheme(
      std::size_t security_bits = kDefaultSecurityBits);

  SchemeKind kind() const override { return SchemeKind::kIdeal; }
  bool verify(const Commitment& c, const Opening& opening) const override;
  std::size_t issued() const { return registry_.size(); }

 protected:
  Commitment do_commit(const Opening& opening) override;

 private:
  std::vector<Opening> registry_;
};

// digest = SHA-256(tag || u32be(lambda) || encode_bid(m) || r).
class HashCommitmentScheme final : public CommitmentScheme {
 public:
  static constexpr std::string_view kTag = "dra.commit.v1";

  explicit HashCommitmentScheme(
      std::size_t security_bits = kDefaultSecurityBits);

  SchemeKind kind() const override { return SchemeKind::kHash; }
  bool verify(const Commitment& c, const Opening& opening) const override;

  static Digest digest(double message, std::span<const std::uint8_t> randomness,
                       std::size_t security_bits);

 protected:
  Commitment do_commit(const Opening& opening) override;
};

std::unique_ptr<CommitmentScheme> make_scheme(
    SchemeKind kind, std::size_t security_bits = kDefaultSecurityBits);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace dra
