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

#include <fstream>
#include <set>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace dra {
namespace {

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(std::stoi(hex.substr(i, 2), nullptr, 16)));
  }
  return out;
}

TEST(CommitTest, OpeningHasLambdaBits) {
  Rng rng(1);
  EXPECT_EQ(make_opening(5.0, rng).randomness.size(), 16u);
  EXPECT_EQ(make_opening(5.0, rng, 256).randomness.size(), 32u);
}

TEST(CommitTest, BidEncodingIsBigEndianIeee) {
  const auto b = encode_bid(1.0);  // 0x3ff0000000000000
  EXPECT_EQ(b[0], 0x3f);
  EXPECT_EQ(b[1], 0xf0);
  for (int i = 2; i < 8; ++i) EXPECT_EQ(b[i], 0);
}

class SchemeTest : public ::testing::TestWithParam<SchemeKind> {};

TEST_P(SchemeTest, CorrectAndBindingOnHonestOpenings) {
  auto scheme = make_scheme(GetParam());
  Rng rng(2);
  const Opening o = make_opening(5.0, rng);
  const Commitment c = scheme->commit(o);
  EXPECT_TRUE(scheme->verify(c, o));
  Opening other_message = o;
  other_message.message = 7.0;
  EXPECT_FALSE(scheme->verify(c, other_message));
  Opening other_randomness = o;
  other_randomness.randomness[3] ^= 1;
  EXPECT_FALSE(scheme->verify(c, other_randomness));
  Opening short_randomness = o;
  short_randomness.randomness.pop_back();
  EXPECT_FALSE(scheme->verify(c, short_randomness));
  EXPECT_THROW(scheme->commit(short_randomness), std::invalid_argument);
}

INSTANTIATE_TEST_SUITE_P(BothSchemes, SchemeTest,
                         ::testing::Values(SchemeKind::kIdeal, SchemeKind::kHash));

TEST(IdealSchemeTest, HandlesAreAllocationOrder) {
  IdealCommitmentScheme scheme;
  Rng rng(3);
  const Commitment a = scheme.commit(make_opening(5.0, rng));
  const Commitment b = scheme.commit(make_opening(7.0, rng));
  EXPECT_EQ(a, Commitment::nonce(0));
  EXPECT_EQ(b, Commitment::nonce(1));
  EXPECT_EQ(a.to_string(), "#0");
  // Same order, different messages: same handles.
  IdealCommitmentScheme again;
  EXPECT_EQ(again.commit(make_opening(100.0, rng)), a);
}

TEST(IdealSchemeTest, NeverIssuedHandleFails) {
  IdealCommitmentScheme scheme;
  Rng rng(4);
  const Opening o = make_opening(1.0, rng);
  EXPECT_FALSE(scheme.verify(Commitment::nonce(9), o));
  Digest d{};
  EXPECT_FALSE(scheme.verify(Commitment::digest(d), o));
}

TEST(HashSchemeTest, MatchesIndependentVectors) {
  std::ifstream in(std::string(DRA_FIXTURE_DIR) + "/hash_vectors.json");
  ASSERT_TRUE(in);
  const auto cases = nlohmann::json::parse(in);
  ASSERT_GE(cases.size(), 5u);
  for (const auto& c : cases) {
    const std::size_t bits = c["security_bits"];
    const auto r = from_hex(c["randomness"]);
    const Digest d = HashCommitmentScheme::digest(c["message"].get<double>(), r, bits);
    EXPECT_EQ(to_hex(d), c["digest"].get<std::string>()) << c.dump();
    HashCommitmentScheme scheme(bits);
    const Opening o{c["message"].get<double>(), r, bits};
    EXPECT_TRUE(scheme.verify(Commitment::digest(d), o));
  }
}

TEST(HashSchemeTest, DeterministicAndCollisionFree) {
  HashCommitmentScheme scheme;
  Rng rng(5);
  const Opening o = make_opening(2.5, rng);
  EXPECT_EQ(scheme.commit(o), scheme.commit(o));
  std::set<std::string> seen;
  constexpr int kPairs = 100000;
  for (int i = 0; i < kPairs; ++i) {
    seen.insert(scheme.commit(make_opening(rng.uniform() * 10, rng)).to_string());
  }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(kPairs));
}

TEST(HashSchemeTest, DomainSeparatedBySecurityParameter) {
  const std::vector<std::uint8_t> r(16, 0xab);
  EXPECT_NE(HashCommitmentScheme::digest(1.0, r, 128),
            HashCommitmentScheme::digest(2.0, r, 128));
  // -0.0 and 0.0 encode differently.
  EXPECT_NE(HashCommitmentScheme::digest(0.0, r, 128),
            HashCommitmentScheme::digest(-0.0, r, 128));
}

}  // namespace
}  // namespace dra
