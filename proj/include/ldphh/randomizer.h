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

#ifndef LDPHH_RANDOMIZER_H_
#define LDPHH_RANDOMIZER_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "ldphh/codeword.h"
#include "ldphh/prf.h"

namespace ldphh {

// Privatized message of one user in one channel: the m-vector that is zero
// except for sign * c_eps * sqrt(m) at `position`. The magnitude is implied by
// (eps, m) and never stored.
struct SparseReport {
  std::uint32_t position = 0;
  std::int8_t sign = +1;

  bool operator==(const SparseReport&) const = default;
};

// Either a codeword or the all-zero input standing for "no item".
class RandomizerInput {
 public:
  static RandomizerInput zero(std::uint64_t m);
  static RandomizerInput of(Codeword x);

  bool is_zero() const { return !codeword_.has_value(); }
  std::uint64_t m() const { return m_; }
  const Codeword& codeword() const { return *codeword_; }

  // Sign of coordinate j; 0 for the zero input.
  int sign_at(std::uint64_t j) const {
    return codeword_ ? codeword_->sign(j) : 0;
  }

 private:
  RandomizerInput(std::uint64_t m, std::optional<Codeword> x)
      : m_(m), codeword_(std::move(x)) {}

  std::uint64_t m_;
  std::optional<Codeword> codeword_;
};

// Probability e^eps / (e^eps + 1) that the reported sign agrees with the input.
inline double keep_probability(double eps) { return 1.0 / (1.0 + std::exp(-eps)); }

// Basic randomizer over any sign oracle: draws j uniformly, then reports the
// sign of coordinate j kept with probability e^eps/(e^eps+1), or a fair coin
// when sign_at(j) == 0. Randomness is consumed in that order so callers that
// only compute the single needed coordinate reproduce `randomize` exactly.
template <class SignAt>
SparseReport randomize_with(std::uint64_t m, double eps, Rng& rng,
                            SignAt&& sign_at) {
  SparseReport r;
  const std::uint64_t j = rng.uniform(m);
  r.position = static_cast<std::uint32_t>(j);
  const int s = sign_at(j);
  if (s == 0) {
    r.sign = rng.coin() ? +1 : -1;
  } else {
    r.sign = static_cast<std::int8_t>(rng.bernoulli(keep_probability(eps)) ? s : -s);
  }
  return r;
}

SparseReport randomize(const RandomizerInput& x, double eps, Rng& rng);

// Dense m-vector represented by a report.
std::vector<double> report_vector(const SparseReport& r, double eps,
                                  std::uint64_t m);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

// Outcome index of (j, sign) in report_distribution: 2j for +, 2j+1 for -.
inline std::uint64_t outcome_index(const SparseReport& r) {
  return 2 * static_cast<std::uint64_t>(r.position) + (r.sign > 0 ? 0 : 1);
}

// Exact probabilities of the 2m outcomes (j, sign).
std::vector<double> report_distribution(
    const RandomizerInput& x, double eps,
    std::uint64_t cap = kDefaultEnumerationCap);

// E[report vector] from an outcome distribution.
std::vector<double> expected_report_vector(const std::vector<double>& dist,
                                           double eps);

}  // namespace ldphh

#endif  // LDPHH_RANDOMIZER_H_
