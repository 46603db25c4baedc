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

#include "ldphh/prf.h"

#include <sodium.h>

#include <cstring>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ldphh {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
  });
}

void put_le(std::uint8_t* out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::array<std::uint8_t, crypto_stream_xchacha20_NONCEBYTES> make_nonce(
    const StreamLabel& label) {
  std::array<std::uint8_t, crypto_stream_xchacha20_NONCEBYTES> nonce{};
  put_le(nonce.data(), static_cast<std::uint32_t>(label.tag), 4);
  put_le(nonce.data() + 4, label.a, 8);
  put_le(nonce.data() + 12, label.b, 8);
  return nonce;
}

}  // namespace

Prf::Prf(const Key& key) : key_(key) { ensure_sodium(); }

Prf Prf::from_seed(std::uint64_t seed) {
  ensure_sodium();
  static constexpr char kDomain[] = "ldphh-seed";
  std::uint8_t input[sizeof(kDomain) - 1 + 8];
  std::memcpy(input, kDomain, sizeof(kDomain) - 1);
  put_le(input + sizeof(kDomain) - 1, seed, 8);
  Key key{};
  crypto_generichash(key.data(), key.size(), input, sizeof(input), nullptr, 0);
  return Prf(key);
}

Prf Prf::child(std::string_view purpose) const {
  std::vector<std::uint8_t> input(key_.begin(), key_.end());
  input.insert(input.end(), purpose.begin(), purpose.end());
  Key key{};
  crypto_generichash(key.data(), key.size(), input.data(), input.size(), nullptr, 0);
  return Prf(key);
}

void Prf::fill(const StreamLabel& label, std::uint64_t block_index,
               std::span<std::uint8_t> out) const {
  const auto nonce = make_nonce(label);
  std::memset(out.data(), 0, out.size());
  crypto_stream_xchacha20_xor_ic(out.data(), out.data(), out.size(),
                                 nonce.data(), block_index, key_.data());
}

std::array<std::uint8_t, 64> Prf::block(const StreamLabel& label,
                                        std::uint64_t block_index) const {
  std::array<std::uint8_t, 64> out{};
  fill(label, block_index, out);
  return out;
}

std::uint64_t Prf::word(const StreamLabel& label, std::uint64_t index) const {
  const auto blk = block(label, index / 8);
  const std::size_t off = (index % 8) * 8;
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | blk[off + i];
  return v;
}

bool Prf::bit(const StreamLabel& label, std::uint64_t index) const {
  const auto blk = block(label, index / 512);
  const std::size_t byte = (index % 512) / 8;
  return ((blk[byte] >> (index % 8)) & 1u) != 0;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng::Rng(const Prf& prf, const StreamLabel& label) {
  const auto blk = prf.block(label, 0);
  std::vector<std::uint32_t> words(8);
  for (int i = 0; i < 8; ++i) {
    words[i] = static_cast<std::uint32_t>(blk[4 * i]) |
               static_cast<std::uint32_t>(blk[4 * i + 1]) << 8 |
               static_cast<std::uint32_t>(blk[4 * i + 2]) << 16 |
               static_cast<std::uint32_t>(blk[4 * i + 3]) << 24;
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

std::uint64_t Rng::uniform(std::uint64_t n) {
  // Lemire's multiply-and-reject; exact for every n.
  using u128 = unsigned __int128;
  u128 prod = static_cast<u128>(engine_()) * n;
  auto low = static_cast<std::uint64_t>(prod);
  if (low < n) {
    const std::uint64_t thresh = (0 - n) % n;
    while (low < thresh) {
      prod = static_cast<u128>(engine_()) * n;
      low = static_cast<std::uint64_t>(prod);
    }
  }
  return static_cast<std::uint64_t>(prod >> 64);
}

}  // namespace ldphh
