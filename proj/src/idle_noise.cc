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

#include "ldphh/idle_noise.h"

#include <algorithm>
#include <cmath>

#include "ldphh/core.h"

namespace ldphh {

namespace {

constexpr int kGuideShift = 54;
constexpr std::size_t kGuideSize = std::size_t{1} << (64 - kGuideShift);

}  // namespace

std::uint64_t IdleCounts::total() const {
  std::uint64_t s = 0;
  for (auto c : plus) s += c;
  for (auto c : minus) s += c;
  return s;
}

IdleNoiseSampler::IdleNoiseSampler(std::uint64_t m) : m_(m) {
  if (m == 0) throw InvalidArgument("idle noise dimension must be positive");
  counts_.resize(2 * m);
  tree_.resize(2 * m + 1);
}

void IdleNoiseSampler::prepare(double lambda) {
  if (lambda == lambda_) return;
  lambda_ = lambda;
  const double spread = 40.0 * std::sqrt(lambda) + 40.0;
  const auto hi = static_cast<std::uint64_t>(std::ceil(lambda + spread));
  const auto lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(lambda - spread)));
  cdf_.assign(hi + 1, 0);
  const double log_lambda = std::log(lambda);
  long double acc = 0.0L;
  for (std::uint64_t i = lo; i <= hi; ++i) {
    const double di = static_cast<double>(i);
    acc += std::exp(di * log_lambda - lambda - std::lgamma(di + 1.0));
    const long double scaled = std::ldexp(std::min(acc, 1.0L), 64);
    cdf_[i] = scaled >= 0x1.0p64L ? UINT64_MAX : static_cast<std::uint64_t>(scaled);
  }
  cdf_[hi] = UINT64_MAX;
  guide_.assign(kGuideSize, 0);
  std::size_t i = 0;
  for (std::size_t g = 0; g < kGuideSize; ++g) {
    const std::uint64_t start = static_cast<std::uint64_t>(g) << kGuideShift;
    while (cdf_[i] <= start) ++i;
    guide_[g] = static_cast<std::uint32_t>(i);
  }
}

std::uint64_t IdleNoiseSampler::poisson(Rng& rng) const {
  const std::uint64_t w = rng.next_u64();
  std::size_t i = guide_[w >> kGuideShift];
  while (cdf_[i] <= w) ++i;
  return i;
}

void IdleNoiseSampler::sample(std::uint64_t k_idle, Rng& rng, IdleCounts& out) {
  const std::uint64_t cells = 2 * m_;
  std::fill(counts_.begin(), counts_.end(), 0);
  if (k_idle > 0) {
    prepare(static_cast<double>(k_idle) / static_cast<double>(cells));
    std::uint64_t total = 0;
    for (auto& c : counts_) {
      c = poisson(rng);
      total += c;
    }
    for (; total < k_idle; ++total) ++counts_[rng.uniform(cells)];
    if (total > k_idle) {
      // Fenwick tree over ball counts; remove uniformly chosen balls.
      tree_[0] = 0;
      for (std::uint64_t x = 1; x <= cells; ++x) tree_[x] = counts_[x - 1];
      for (std::uint64_t x = 1; x <= cells; ++x) {
        const std::uint64_t parent = x + (x & (~x + 1));
        if (parent <= cells) tree_[parent] += tree_[x];
      }
      std::uint64_t top = 1;
      while (top * 2 <= cells) top *= 2;
      for (; total > k_idle; --total) {
        std::uint64_t r = rng.uniform(total);
        std::uint64_t pos = 0;
        for (std::uint64_t step = top; step > 0; step >>= 1) {
          if (pos + step <= cells && tree_[pos + step] <= r) {
            pos += step;
            r -= tree_[pos];
          }
        }
        --counts_[pos];
        for (std::uint64_t x = pos + 1; x <= cells; x += x & (~x + 1)) --tree_[x];
      }
    }
  }
  out.plus.resize(m_);
  out.minus.resize(m_);
  for (std::uint64_t j = 0; j < m_; ++j) {
    out.plus[j] = counts_[2 * j];
    out.minus[j] = counts_[2 * j + 1];
  }
}

IdleCounts IdleNoiseSampler::sample(std::uint64_t k_idle, Rng& rng) {
  IdleCounts out;
  sample(k_idle, rng, out);
  return out;
}

IdleCounts simulate_idle_noise(std::uint64_t k_idle, std::uint64_t m, Rng& rng) {
  IdleNoiseSampler sampler(m);
  return sampler.sample(k_idle, rng);
}

}  // namespace ldphh
