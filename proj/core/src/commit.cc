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

#include "dra/commit.h"

#include <bit>
#include <cstring>
#include <stdexcept>

#include <openssl/evp.h>

namespace dra {

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

std::string Commitment::to_string() const {
  if (const auto* n = as_nonce()) return "#" + std::to_string(*n);
  return to_hex(*as_digest());
}

std::array<std::uint8_t, 8> encode_bid(double bid) {
  const auto bits = std::bit_cast<std::uint64_t>(bid);
  std::array<std::uint8_t, 8> out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
  }
  return out;
}

Opening make_opening(double message, Rng& rng, std::size_t security_bits) {
  if (security_bits == 0 || security_bits % 8 != 0) {
    throw std::invalid_argument("security parameter must be a positive multiple of 8");
  }
  Opening o;
  o.message = message;
  o.security_bits = security_bits;
  o.randomness.resize(security_bits / 8);
  for (std::size_t i = 0; i < o.randomness.size(); i += 8) {
    std::uint64_t word = rng();
    for (std::size_t j = i; j < std::min(i + 8, o.randomness.size()); ++j) {
      o.randomness[j] = static_cast<std::uint8_t>(word);
      word >>= 8;
    }
  }
  return o;
}

// --- CommitmentScheme -------------------------------------------------------

CommitmentScheme::CommitmentScheme(std::size_t security_bits)
    : security_bits_(security_bits) {
  if (security_bits == 0 || security_bits % 8 != 0) {
    throw std::invalid_argument("security parameter must be a positive multiple of 8");
  }
}

bool CommitmentScheme::well_formed(const Opening& opening) const {
  return opening.security_bits == security_bits_ &&
         opening.randomness.size() * 8 == security_bits_;
}

Commitment CommitmentScheme::commit(const Opening& opening) {
  if (!well_formed(opening)) {
    throw std::invalid_argument("randomness must be exactly " +
                                std::to_string(security_bits_) + " bits");
  }
  return do_commit(opening);
}

// --- ideal ------------------------------------------------------------------

IdealCommitmentScheme::IdealCommitmentScheme(std::size_t security_bits)
    : CommitmentScheme(security_bits) {}

Commitment IdealCommitmentScheme::do_commit(const Opening& opening) {
  registry_.push_back(opening);
  return Commitment::nonce(registry_.size() - 1);
}

bool IdealCommitmentScheme::verify(const Commitment& c,
                                   const Opening& opening) const {
  const auto* n = c.as_nonce();
  if (n == nullptr || *n >= registry_.size() || !well_formed(opening)) {
    return false;
  }
  const Opening& stored = registry_[*n];
  // Bitwise comparison: -0.0 and +0.0 are different messages.
  return encode_bid(stored.message) == encode_bid(opening.message) &&
         stored.randomness == opening.randomness;
}

// --- hash -------------------------------------------------------------------

HashCommitmentScheme::HashCommitmentScheme(std::size_t security_bits)
    : CommitmentScheme(security_bits) {}

Digest HashCommitmentScheme::digest(double message,
                                    std::span<const std::uint8_t> randomness,
                                    std::size_t security_bits) {
  std::vector<std::uint8_t> buf;
  buf.reserve(kTag.size() + 4 + 8 + randomness.size());
  buf.insert(buf.end(), kTag.begin(), kTag.end());
  const auto lambda = static_cast<std::uint32_t>(security_bits);
  for (int i = 0; i < 4; ++i) {
    buf.push_back(static_cast<std::uint8_t>(lambda >> (24 - 8 * i)));
  }
  const auto m = encode_bid(message);
  buf.insert(buf.end(), m.begin(), m.end());
  buf.insert(buf.end(), randomness.begin(), randomness.end());

  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(buf.data(), buf.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("SHA-256 failed");
  }
  return out;
}

Commitment HashCommitmentScheme::do_commit(const Opening& opening) {
  return Commitment::digest(
      digest(opening.message, opening.randomness, security_bits()));
}

bool HashCommitmentScheme::verify(const Commitment& c,
                                  const Opening& opening) const {
  const auto* d = c.as_digest();
  if (d == nullptr || !well_formed(opening)) return false;
  return *d == digest(opening.message, opening.randomness, security_bits());
}

std::unique_ptr<CommitmentScheme> make_scheme(SchemeKind kind,
                                              std::size_t security_bits) {
  if (kind == SchemeKind::kHash) {
    return std::make_unique<HashCommitmentScheme>(security_bits);
  }
  return std::make_unique<IdealCommitmentScheme>(security_bits);
}

}  // namespace dra
