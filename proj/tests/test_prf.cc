// Copyright 2026 The ldphh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cstring>
#include <set>

#include <gtest/gtest.h>
#include <sodium.h>

#include "ldphh/prf.h"

namespace ldphh {
namespace {

std::string hex(std::span<const std::uint8_t> b) { return to_hex(b); }

// Vectors cross-checked against an independent BLAKE2b / XChaCha20
// implementation.
TEST(Prf, SeedDerivationVector) {
  EXPECT_EQ(hex(Prf::from_seed(0).key()),
            "f77e6f155f29bad95110e56df4858a9c058f9aab4cc5df55e04ad6261e005c60");
  EXPECT_EQ(hex(Prf::from_seed(42).key()),
            "49d910e382653215d203bfbc9a701b3ba95c9abe2da31f50094edae0ea105dd9");
  EXPECT_EQ(hex(Prf::from_seed(0).child("private").key()),
            "668aa5bc7d23962705966e1c96664105fff1446509fe73bbea957f843fc11490");
}

TEST(Prf, StreamVector) {
  const Prf p = Prf::from_seed(0);
  const auto b = p.block({StreamTag::kPhi, 7, 0}, 0);
  EXPECT_EQ(hex(std::span<const std::uint8_t>(b.data(), 32)),
            "ec911f54f416177420c3b0e65c8b4e35194c3a69760b528883e9b9c984fa2b8d");
  EXPECT_EQ(p.word({StreamTag::kHashSeed, 1, 2}, 9), 0xf0be69408ea7009cull);
}

TEST(Prf, MatchesLibsodiumKeystream) {
  ASSERT_GE(sodium_init(), 0);
  const Prf p = Prf::from_seed(1234);
  const StreamLabel label{StreamTag::kPublicString, 0x1122334455667788ull, 99};
  std::array<std::uint8_t, 24> nonce{};
  const std::uint32_t tag = static_cast<std::uint32_t>(label.tag);
  for (int i = 0; i < 4; ++i) nonce[i] = static_cast<std::uint8_t>(tag >> (8 * i));
  for (int i = 0; i < 8; ++i) {
    nonce[4 + i] = static_cast<std::uint8_t>(label.a >> (8 * i));
    nonce[12 + i] = static_cast<std::uint8_t>(label.b >> (8 * i));
  }
  std::vector<std::uint8_t> expect(64 * 5);
  crypto_stream_xchacha20(expect.data(), expect.size(), nonce.data(), p.key().data());
  std::vector<std::uint8_t> got(64 * 3);
  p.fill(label, 2, got);
  EXPECT_EQ(0, std::memcmp(got.data(), expect.data() + 128, got.size()));
}

TEST(Prf, SeedKeyMatchesLibsodiumHash) {
  ASSERT_GE(sodium_init(), 0);
  std::uint8_t input[18] = {'l', 'd', 'p', 'h', 'h', '-', 's', 'e', 'e', 'd'};
  const std::uint64_t seed = 77;
  for (int i = 0; i < 8; ++i) input[10 + i] = static_cast<std::uint8_t>(seed >> (8 * i));
  std::array<std::uint8_t, 32> key{};
  crypto_generichash(key.data(), key.size(), input, sizeof(input), nullptr, 0);
  EXPECT_EQ(key, Prf::from_seed(77).key());
}

TEST(Prf, ReplayIsBitExact) {
  const Prf a = Prf::from_seed(9), b = Prf::from_seed(9);
  for (std::uint64_t i = 0; i < 50; ++i) {
    EXPECT_EQ(a.block({StreamTag::kPhi, i, 3}, i), b.block({StreamTag::kPhi, i, 3}, i));
  }
}

TEST(Prf, DistinctLabelsGiveDistinctStreams) {
  const Prf p = Prf::from_seed(5);
  std::set<std::array<std::uint8_t, 64>> seen;
  for (auto tag : {StreamTag::kPhi, StreamTag::kHashSeed, StreamTag::kUserNoise}) {
    for (std::uint64_t a = 0; a < 8; ++a) {
      for (std::uint64_t b = 0; b < 8; ++b) {
        EXPECT_TRUE(seen.insert(p.block({tag, a, b}, 0)).second);
      }
    }
  }
  EXPECT_NE(Prf::from_seed(5).key(), Prf::from_seed(6).key());
}

TEST(Prf, WordsAndBitsAreConsistentWithBytes) {
  const Prf p = Prf::from_seed(3);
  const StreamLabel l{StreamTag::kPhi, 4, 0};
  std::vector<std::uint8_t> bytes(256);
  p.fill(l, 0, bytes);
  for (std::uint64_t w = 0; w < 32; ++w) {
    std::uint64_t x = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | bytes[8 * w + i];
    EXPECT_EQ(p.word(l, w), x);
  }
  for (std::uint64_t i = 0; i < 2048; ++i) {
    EXPECT_EQ(p.bit(l, i), ((bytes[i / 8] >> (i % 8)) & 1) != 0);
  }
}

TEST(Rng, Vector) {
  Rng r(Prf::from_seed(42), {StreamTag::kUserNoise, 3, 0});
  EXPECT_EQ(r.next_u64(), 18116329307996780198ull);
  // The second engine output is 1592131855109795263.
  EXPECT_EQ(r.uniform(1000), 86u);
}

TEST(Rng, UniformIsInRangeAndUnbiased) {
  Rng r(11);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[r.uniform(7)];
  for (int c : counts) EXPECT_NEAR(c, draws / 7.0, 5 * std::sqrt(draws / 7.0));
  EXPECT_EQ(r.uniform(1), 0u);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, SameLabelSameSequence) {
  Rng a(Prf::from_seed(1), {StreamTag::kIdleNoise, 2, 3});
  Rng b(Prf::from_seed(1), {StreamTag::kIdleNoise, 2, 3});
  Rng c(Prf::from_seed(1), {StreamTag::kIdleNoise, 2, 4});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

}  // namespace
}  // namespace ldphh
