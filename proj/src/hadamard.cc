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

#include "ldphh/hadamard.h"

#include <bit>
#include <vector>

namespace ldphh::hadamard {

namespace {

std::vector<std::array<std::uint64_t, 4>> build_table() {
  std::vector<std::array<std::uint64_t, 4>> table(256);
  for (unsigned u = 0; u < 256; ++u) {
    for (unsigned j = 0; j < 256; ++j) {
      if (std::popcount(u & j) & 1u) table[u][j >> 6] |= std::uint64_t{1} << (j & 63);
    }
  }
  return table;
}

}  // namespace

const std::array<std::uint64_t, 4>& encode(std::uint8_t u) {
  static const auto table = build_table();
  return table[u];
}

std::uint8_t decode(std::span<const std::uint64_t, 4> block) {
  std::array<int, 256> f;
  for (int j = 0; j < 256; ++j) {
    f[j] = ((block[j >> 6] >> (j & 63)) & 1u) ? -1 : 1;
  }
  for (int len = 1; len < 256; len <<= 1) {
    for (int i = 0; i < 256; i += len << 1) {
      for (int j = i; j < i + len; ++j) {
        const int a = f[j];
        const int b = f[j + len];
        f[j] = a + b;
        f[j + len] = a - b;
      }
    }
  }
  int best = 0;
  for (int u = 1; u < 256; ++u) {
    if (f[u] > f[best]) best = u;
  }
  return static_cast<std::uint8_t>(best);
}

}  // namespace ldphh::hadamard
