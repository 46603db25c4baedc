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

#ifndef LDPHH_HADAMARD_H_
#define LDPHH_HADAMARD_H_

#include <array>
#include <cstdint>
#include <span>

namespace ldphh::hadamard {

inline constexpr int kBlockBits = 256;

// Codeword of byte u: bit j = parity(u & j), j in [0, 256). Relative distance
// 1/2 between distinct bytes.
const std::array<std::uint64_t, 4>& encode(std::uint8_t u);

// Maximum-likelihood decode of a 256-bit block (packed, 4 words) by a fast
// Walsh-Hadamard transform. Ties go to the smallest byte.
std::uint8_t decode(std::span<const std::uint64_t, 4> block);

}  // namespace ldphh::hadamard

#endif  // LDPHH_HADAMARD_H_
