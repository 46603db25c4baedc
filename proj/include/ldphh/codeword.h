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

#ifndef LDPHH_CODEWORD_H_
#define LDPHH_CODEWORD_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ldphh {

// A point of the scaled hypercube {-1/sqrt(m), +1/sqrt(m)}^m stored as packed
// sign bits: bit j set means coordinate j is negative.
class Codeword {
 public:
  Codeword() = default;
  explicit Codeword(std::uint64_t m);  // all coordinates positive

  std::uint64_t m() const { return m_; }

  int sign(std::uint64_t j) const {
    return ((words_[j >> 6] >> (j & 63)) & 1u) ? -1 : +1;
  }
  bool negative(std::uint64_t j) const {
    return ((words_[j >> 6] >> (j & 63)) & 1u) != 0;
  }
  void set_negative(std::uint64_t j, bool neg);
  void flip(std::uint64_t j) { words_[j >> 6] ^= (std::uint64_t{1} << (j & 63)); }

  double value(std::uint64_t j) const;
  std::vector<double> dense() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  bool operator==(const Codeword&) const = default;

 private:
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> words_;
};

std::uint64_t hamming_distance(const Codeword& a, const Codeword& b);

// <a, b> = 1 - 2 * hamming / m.
double inner_product(const Codeword& a, const Codeword& b);

double inner_product(const Codeword& a, std::span<const double> z);

}  // namespace ldphh

#endif  // LDPHH_CODEWORD_H_
