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

#include "ldphh/freq_oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

namespace ldphh {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> in, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | in[off + i];
  return v;
}

}  // namespace

Codeword phi_column(const PublicRandomness& pub, Item v, std::uint64_t m) {
  if (m == 0) throw InvalidArgument("projection dimension must be positive");
  Codeword col(m);
  auto words = col.mutable_words();
  std::vector<std::uint8_t> bytes(words.size() * 8);
  pub.fill({StreamTag::kPhi, v, 0}, 0, bytes);
  for (std::size_t w = 0; w < words.size(); ++w) {
    words[w] = get_u64(bytes, 8 * w);
  }
  if (m % 64 != 0) words.back() &= (std::uint64_t{1} << (m % 64)) - 1;
  return col;
}

bool phi_negative(const PublicRandomness& pub, Item v, std::uint64_t j) {
  return pub.bit({StreamTag::kPhi, v, 0}, j);
}

SparseReport fo_client_report(Item v, std::uint64_t m,
                              const PublicRandomness& pub, double eps, Rng& rng) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (m == 0) throw InvalidArgument("projection dimension must be positive");
  return randomize_with(m, eps, rng, [&](std::uint64_t j) {
    return phi_negative(pub, v, j) ? -1 : +1;
  });
}

SparseReport fo_user_report(const MaybeItem& v, std::uint64_t m,
                            const PublicRandomness& pub, double eps, Rng& rng) {
  if (v) return fo_client_report(*v, m, pub, eps, rng);
  if (m == 0) throw InvalidArgument("projection dimension must be positive");
  return randomize_with(m, eps, rng, [](std::uint64_t) { return 0; });
}

AggregateState::AggregateState(std::uint64_t m, double eps)
    : m_(m), eps_(eps), plus_(m, 0), minus_(m, 0) {
  if (m == 0) throw InvalidArgument("aggregate dimension must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
}

void AggregateState::absorb(const SparseReport& report) {
  if (report.position >= m_) {
    throw InvalidArgument("report position " + std::to_string(report.position) +
                          " out of range for m=" + std::to_string(m_));
  }
  if (report.sign > 0) {
    ++plus_[report.position];
  } else {
    ++minus_[report.position];
  }
  ++n_total_;
}

void AggregateState::absorb_counts(std::span<const std::uint64_t> plus,
                                   std::span<const std::uint64_t> minus) {
  if (plus.size() != m_ || minus.size() != m_) {
    throw InvalidArgument("count deltas must have length m");
  }
  for (std::uint64_t j = 0; j < m_; ++j) {
    plus_[j] += plus[j];
    minus_[j] += minus[j];
    n_total_ += plus[j] + minus[j];
  }
}

void AggregateState::clear() {
  std::fill(plus_.begin(), plus_.end(), 0);
  std::fill(minus_.begin(), minus_.end(), 0);
  n_total_ = 0;
}

void AggregateState::merge(const AggregateState& other) {
  if (other.m_ != m_ || other.eps_ != eps_) {
    throw InvalidArgument("cannot merge aggregates with different m or eps");
  }
  absorb_counts(other.plus_, other.minus_);
}

std::vector<double> AggregateState::zbar() const {
  if (n_total_ == 0) throw InvalidArgument("aggregate is empty");
  const double scale =
      validate_report_magnitude(eps_, m_) / static_cast<double>(n_total_);
  std::vector<double> z(m_);
  for (std::uint64_t j = 0; j < m_; ++j) {
    z[j] = scale * (static_cast<double>(plus_[j]) - static_cast<double>(minus_[j]));
  }
  return z;
}

std::int64_t AggregateState::signed_sum(const Codeword& column) const {
  if (column.m() != m_) throw InvalidArgument("column length does not match m");
  std::int64_t total = 0;
  for (std::uint64_t j = 0; j < m_; ++j) {
    const auto diff = static_cast<std::int64_t>(plus_[j]) -
                      static_cast<std::int64_t>(minus_[j]);
    total += column.negative(j) ? -diff : diff;
  }
  return total;
}

double AggregateState::inner_product(const Codeword& column) const {
  if (n_total_ == 0) throw InvalidArgument("aggregate is empty");
  // <s/sqrt(m), c sqrt(m) (plus - minus) / n> = c * sum_j s_j (plus - minus) / n.
  return c_eps(eps_) * static_cast<double>(signed_sum(column)) /
         static_cast<double>(n_total_);
}

std::vector<std::uint8_t> AggregateState::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(24 + 16 * m_);
  put_u64(out, m_);
  put_u64(out, n_total_);
  put_u64(out, std::bit_cast<std::uint64_t>(eps_));
  for (auto c : plus_) put_u64(out, c);
  for (auto c : minus_) put_u64(out, c);
  return out;
}

AggregateState AggregateState::deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 24) throw InvalidArgument("aggregate blob truncated");
  const std::uint64_t m = get_u64(bytes, 0);
  const std::uint64_t n = get_u64(bytes, 8);
  const double eps = std::bit_cast<double>(get_u64(bytes, 16));
  if (m == 0 || m > (bytes.size() - 24) / 16 || bytes.size() != 24 + 16 * m) {
    throw InvalidArgument("aggregate blob has inconsistent length");
  }
  AggregateState s(m, eps);
  std::uint64_t total = 0;
  for (std::uint64_t j = 0; j < m; ++j) {
    s.plus_[j] = get_u64(bytes, 24 + 8 * j);
    s.minus_[j] = get_u64(bytes, 24 + 8 * (m + j));
    total += s.plus_[j] + s.minus_[j];
  }
  if (total != n) throw InvalidArgument("aggregate blob counts do not sum to n_total");
  s.n_total_ = n;
  return s;
}

FrequencyOracle::FrequencyOracle(PublicRandomness pub, std::uint64_t m, double eps)
    : pub_(std::move(pub)), state_(m, eps) {}

double FrequencyOracle::estimate(Item v) const {
  return state_.inner_product(phi_column(pub_, v, state_.m()));
}

std::vector<double> FrequencyOracle::estimate_all(std::uint64_t d) const {
  std::vector<double> out(d);
  for (Item v = 0; v < d; ++v) out[v] = estimate(v);
  return out;
}

}  // namespace ldphh
