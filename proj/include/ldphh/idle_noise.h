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

#ifndef LDPHH_IDLE_NOISE_H_
#define LDPHH_IDLE_NOISE_H_

#include <cstdint>
#include <vector>

#include "ldphh/prf.h"

namespace ldphh {

// Sign counts contributed by a batch of reports on the zero input.
struct IdleCounts {
  std::vector<std::uint64_t> plus;
  std::vector<std::uint64_t> minus;

  std::uint64_t total() const;
};

// Draws the joint counts of k_idle independent basic-randomizer reports on the
// zero input, that is a multinomial sample of k_idle balls over the 2m
// equiprobable outcomes (j, sign).
//
// Counts start as independent Poisson(k_idle / 2m) draws. If their sum s falls
// short of k_idle the missing balls are thrown uniformly; if it exceeds k_idle
// a uniformly chosen subset of s - k_idle balls is removed. Both corrections
// map a multinomial sample of size s to one of size k_idle, so the result is
// exact up to the double-precision resolution of the Poisson tables.
class IdleNoiseSampler {
 public:
  explicit IdleNoiseSampler(std::uint64_t m);

  std::uint64_t m() const { return m_; }

  void sample(std::uint64_t k_idle, Rng& rng, IdleCounts& out);
  IdleCounts sample(std::uint64_t k_idle, Rng& rng);

 private:
  void prepare(double lambda);
  std::uint64_t poisson(Rng& rng) const;

  std::uint64_t m_;
  double lambda_ = -1.0;
  std::vector<std::uint64_t> cdf_;  // scaled by 2^64
  std::vector<std::uint32_t> guide_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> tree_;
};

IdleCounts simulate_idle_noise(std::uint64_t k_idle, std::uint64_t m, Rng& rng);

}  // namespace ldphh

#endif  // LDPHH_IDLE_NOISE_H_
