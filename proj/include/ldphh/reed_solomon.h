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

#ifndef LDPHH_REED_SOLOMON_H_
#define LDPHH_REED_SOLOMON_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ldphh {

// Arithmetic in GF(2^8) with primitive polynomial x^8+x^4+x^3+x^2+1 (0x11d)
// and generator alpha = 2.
namespace gf256 {
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t div(std::uint8_t a, std::uint8_t b);
std::uint8_t pow_alpha(int e);
int log(std::uint8_t a);  // a != 0
}  // namespace gf256

// Systematic Reed-Solomon code RS(n, k) over GF(2^8), n <= 255, with
// generator roots alpha^0 .. alpha^{n-k-1}. Codewords are the k message
// symbols followed by n-k parity symbols; index i holds the coefficient of
// x^{n-1-i}. Unique decoding (Berlekamp-Massey, Chien search, Forney)
// corrects up to floor((n-k)/2) symbol errors.
class ReedSolomon {
 public:
  ReedSolomon(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int correctable() const { return (n_ - k_) / 2; }

  std::vector<std::uint8_t> encode(std::span<const std::uint8_t> message) const;

  // Returns the message, or nullopt when no codeword lies within the unique
  // decoding radius.
  std::optional<std::vector<std::uint8_t>> decode(
      std::span<const std::uint8_t> received) const;

 private:
  std::vector<std::uint8_t> syndromes(std::span<const std::uint8_t> word) const;

  int n_;
  int k_;
  std::vector<std::uint8_t> generator_;  // high-to-low degree, monic
};

}  // namespace ldphh

#endif  // LDPHH_REED_SOLOMON_H_
