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

#ifndef LDPHH_FREQ_ORACLE_H_
#define LDPHH_FREQ_ORACLE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldphh/codeword.h"
#include "ldphh/core.h"
#include "ldphh/prf.h"
#include "ldphh/randomizer.h"

namespace ldphh {

// Column Phi e_v of the sign projection, regenerated from the public stream
// (kPhi, v, 0): coordinate j is negative iff bit j of that stream is set.
Codeword phi_column(const PublicRandomness& pub, Item v, std::uint64_t m);

// Sign bit of a single coordinate of phi_column(pub, v, m).
bool phi_negative(const PublicRandomness& pub, Item v, std::uint64_t j);

// Randomizes phi_column(pub, v, m) while generating only the sampled
// coordinate. Consumes `rng` exactly as randomize() would.
SparseReport fo_client_report(Item v, std::uint64_t m,
                              const PublicRandomness& pub, double eps, Rng& rng);

// fo_client_report for an item, the zero input otherwise.
SparseReport fo_user_report(const MaybeItem& v, std::uint64_t m,
                            const PublicRandomness& pub, double eps, Rng& rng);

// Integer sign counts per coordinate. zbar_j = c_eps sqrt(m) (plus_j -
// minus_j) / n_total.
class AggregateState {
 public:
  AggregateState() = default;
  AggregateState(std::uint64_t m, double eps);

  std::uint64_t m() const { return m_; }
  double eps() const { return eps_; }
  std::uint64_t n_total() const { return n_total_; }
  const std::vector<std::uint64_t>& plus() const { return plus_; }
  const std::vector<std::uint64_t>& minus() const { return minus_; }

  // Throws InvalidArgument when report.position >= m.
  void absorb(const SparseReport& report);

  // Adds count deltas (for example simulated idle reports).
  void absorb_counts(std::span<const std::uint64_t> plus,
                     std::span<const std::uint64_t> minus);

  // Resets all counts to zero.
  void clear();

  // Requires equal m and eps.
  void merge(const AggregateState& other);

  std::vector<double> zbar() const;

  // sum_j s_j (plus_j - minus_j) for a sign vector s (set bit = -1).
  std::int64_t signed_sum(const Codeword& column) const;

  // <column, zbar> for a unit hypercube column.
  double inner_product(const Codeword& column) const;

  // Layout (little-endian): u64 m, u64 n_total, f64 eps, m x u64 plus,
  // m x u64 minus.
  std::vector<std::uint8_t> serialize() const;
  static AggregateState deserialize(std::span<const std::uint8_t> bytes);

  bool operator==(const AggregateState&) const = default;

 private:
  std::uint64_t m_ = 0;
  double eps_ = 0.0;
  std::uint64_t n_total_ = 0;
  std::vector<std::uint64_t> plus_;
  std::vector<std::uint64_t> minus_;
};

class FrequencyOracle {
 public:
  FrequencyOracle(PublicRandomness pub, std::uint64_t m, double eps);

  std::uint64_t m() const { return state_.m(); }
  const AggregateState& state() const { return state_; }
  AggregateState& mutable_state() { return state_; }

  void absorb(const SparseReport& report) { state_.absorb(report); }

  // <Phi e_v, zbar>; unclipped. Requires at least one absorbed report.
  double estimate(Item v) const;

  // Estimates for items 0..d-1.
  std::vector<double> estimate_all(std::uint64_t d) const;

 private:
  PublicRandomness pub_;
  AggregateState state_;
};

}  // namespace ldphh

#endif  // LDPHH_FREQ_ORACLE_H_
