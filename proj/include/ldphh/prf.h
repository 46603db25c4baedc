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

#ifndef LDPHH_PRF_H_
#define LDPHH_PRF_H_

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace ldphh {

// Purpose tags for keyed sub-streams. Values are part of the reproducibility
// contract; never renumber.
enum class StreamTag : std::uint32_t {
  kPhi = 1,            // projection columns: (item, 0)
  kHashSeed = 2,       // hash seeds: (repetition, 0)
  kPublicString = 3,   // one-bit public strings: (user, run)
  kReferenceCode = 4,  // reference code generator: (t, m | attempt << 32)
  kHashCoefficients = 5,
  kUserNoise = 16,     // private client randomness: (user, run)
  kIdleNoise = 17,     // simulated idle users: (repetition, channel)
  kTrial = 18,         // per-trial seeds: (trial, purpose)
  kDataset = 19,
  kOneBitCoin = 20,    // private acceptance coins: (user, run)
};

struct StreamLabel {
  StreamTag tag;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

// Keyed pseudorandom function producing seekable byte streams.
//
// Stream for label (tag, a, b) is the XChaCha20 keystream under the 256-bit
// key with the 24-byte nonce
//     u32le(tag) || u64le(a) || u64le(b) || 00 00 00 00
// and block counter starting at zero. Byte offset o of the stream lives in
// block o / 64. Distinct labels use distinct nonces, so sub-streams never
// overlap.
class Prf {
 public:
  using Key = std::array<std::uint8_t, 32>;

  explicit Prf(const Key& key);

  // Master key derived from a 64-bit seed: BLAKE2b-256("ldphh-seed" ||
  // u64le(seed)).
  static Prf from_seed(std::uint64_t seed);

  const Key& key() const { return key_; }

  // Independent key BLAKE2b-256(key || purpose), for example to separate a
  // simulation's private coins from its public ones.
  Prf child(std::string_view purpose) const;

  // Writes stream bytes [block_index * 64, block_index * 64 + out.size()).
  void fill(const StreamLabel& label, std::uint64_t block_index,
            std::span<std::uint8_t> out) const;

  std::array<std::uint8_t, 64> block(const StreamLabel& label,
                                     std::uint64_t block_index) const;

  // Little-endian 64-bit word at word offset `index` of the stream.
  std::uint64_t word(const StreamLabel& label, std::uint64_t index) const;

  // Single bit at bit offset `index` (bit index%8 of byte index/8).
  bool bit(const StreamLabel& label, std::uint64_t index) const;

  bool operator==(const Prf& other) const { return key_ == other.key_; }

 private:
  Key key_;
};

// Public coins shared by all parties.
using PublicRandomness = Prf;

std::string to_hex(std::span<const std::uint8_t> bytes);

// Private random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; all derived draws below are implemented here so
// results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(const Prf& prf, const StreamLabel& label);

  std::uint64_t next_u64() { return engine_(); }

  // Exactly uniform on [0, n), n >= 1.
  std::uint64_t uniform(std::uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return unit() < p; }

  bool coin() { return (engine_() >> 63) != 0; }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ldphh

#endif  // LDPHH_PRF_H_
