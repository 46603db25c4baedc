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

#include "ldphh/codeword.h"

#include <bit>
#include <cmath>

#include "ldphh/core.h"

namespace ldphh {

Codeword::Codeword(std::uint64_t m) : m_(m), words_((m + 63) / 64, 0) {}

void Codeword::set_negative(std::uint64_t j, bool neg) {
  const std::uint64_t mask = std::uint64_t{1} << (j & 63);
  if (neg) {
    words_[j >> 6] |= mask;
  } else {
    words_[j >> 6] &= ~mask;
  }
}

double Codeword::value(std::uint64_t j) const {
  return sign(j) / std::sqrt(static_cast<double>(m_));
}

std::vector<double> Codeword::dense() const {
  std::vector<double> out(m_);
  const double s = 1.0 / std::sqrt(static_cast<double>(m_));
  for (std::uint64_t j = 0; j < m_; ++j) out[j] = sign(j) * s;
  return out;
}

std::uint64_t hamming_distance(const Codeword& a, const Codeword& b) {
  if (a.m() != b.m()) throw InvalidArgument("codeword lengths differ");
  std::uint64_t dist = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) dist += std::popcount(wa[i] ^ wb[i]);
  return dist;
}

double inner_product(const Codeword& a, const Codeword& b) {
  const double m = static_cast<double>(a.m());
  return 1.0 - 2.0 * static_cast<double>(hamming_distance(a, b)) / m;
}

double inner_product(const Codeword& a, std::span<const double> z) {
  if (z.size() != a.m()) throw InvalidArgument("vector length mismatch");
  double acc = 0.0;
  for (std::uint64_t j = 0; j < a.m(); ++j) acc += a.sign(j) * z[j];
  return acc / std::sqrt(static_cast<double>(a.m()));
}

}  // namespace ldphh
