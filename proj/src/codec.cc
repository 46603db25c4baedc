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

#include "ldphh/codec.h"

#include <bit>
#include <cmath>
#include <sstream>

#include "ldphh/hadamard.h"
#include "ldphh/prf.h"

namespace ldphh {

std::string to_string(CodeKind kind) {
  return kind == CodeKind::kReference ? "reference" : "concatenated";
}

CodeKind parse_code_kind(const std::string& s) {
  if (s == "reference") return CodeKind::kReference;
  if (s == "concatenated") return CodeKind::kConcatenated;
  throw InvalidArgument("unknown code kind: " + s);
}

std::string CodeDescription::to_header() const {
  std::ostringstream out;
  out << "kind=" << to_string(kind) << ";d=" << d << ";t=" << t << ";m=" << m
      << ";zeta_eff=" << zeta_eff << ";build_seed=" << build_seed;
  return out.str();
}

CodeDescription Code::describe() const {
  return CodeDescription{kind(), d_, t_, m_, zeta_eff_, build_seed()};
}

void Code::check_item(Item v) const {
  if (v >= d_) {
    throw InvalidArgument("item " + std::to_string(v) + " outside universe of size " +
                          std::to_string(d_));
  }
}

void Code::check_word(const Codeword& y) const {
  if (y.m() != m_) throw InvalidArgument("word length does not match the code");
}

// ---- reference code ----

ReferenceCode::ReferenceCode(std::uint64_t d, std::uint32_t t, std::uint64_t m,
                             std::vector<Codeword> rows,
                             std::uint64_t min_distance, std::uint64_t attempt)
    : Code(d, t, m, static_cast<double>(min_distance) / static_cast<double>(m)),
      rows_(std::move(rows)),
      min_distance_(min_distance),
      attempt_(attempt) {
  codewords_.reserve(d);
  for (Item v = 0; v < d; ++v) codewords_.push_back(encode(v));
}

std::shared_ptr<const ReferenceCode> ReferenceCode::build(std::uint64_t d,
                                                          std::uint64_t m) {
  if (d < 2 || d > kMaxD) {
    throw InvalidArgument("reference code supports 2 <= d <= 2^16, got d=" +
                          std::to_string(d));
  }
  const std::uint32_t t = std::max<std::uint32_t>(1, ceil_log2(d));
  if (m == 0) m = std::max<std::uint64_t>(32, 16 * t);
  if (m < t) throw InvalidArgument("reference code needs m >= t");
  const Prf prf = Prf::from_seed(kReferenceCodeSeed);
  const std::uint64_t nwords = (m + 63) / 64;

  for (std::uint64_t attempt = 0; attempt < 1024; ++attempt) {
    std::vector<std::uint8_t> stream((t * m + 7) / 8);
    prf.fill({StreamTag::kReferenceCode, t, m | (attempt << 32)}, 0, stream);
    std::vector<Codeword> rows(t, Codeword(m));
    for (std::uint32_t r = 0; r < t; ++r) {
      for (std::uint64_t j = 0; j < m; ++j) {
        const std::uint64_t bit = r * m + j;
        rows[r].set_negative(j, (stream[bit / 8] >> (bit % 8)) & 1u);
      }
    }
    // Linear code: minimum distance is the minimum nonzero weight. Walk all
    // 2^t messages in Gray-code order.
    std::vector<std::uint64_t> acc(nwords, 0);
    std::uint64_t min_weight = m;
    const std::uint64_t count = std::uint64_t{1} << t;
    for (std::uint64_t i = 1; i < count; ++i) {
      const int flip_bit = std::countr_zero(i);
      const auto row = rows[flip_bit].words();
      std::uint64_t w = 0;
      for (std::uint64_t k = 0; k < nwords; ++k) {
        acc[k] ^= row[k];
        w += std::popcount(acc[k]);
      }
      min_weight = std::min(min_weight, w);
    }
    if (min_weight > 0) {
      return std::shared_ptr<const ReferenceCode>(
          new ReferenceCode(d, t, m, std::move(rows), min_weight, attempt));
    }
  }
  throw Error("could not draw an injective reference code");
}

Codeword ReferenceCode::encode(Item v) const {
  check_item(v);
  Codeword x(m_);
  auto out = x.mutable_words();
  for (std::uint32_t r = 0; r < t_; ++r) {
    if (!((v >> r) & 1u)) continue;
    const auto row = rows_[r].words();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] ^= row[k];
  }
  return x;
}

std::optional<Item> ReferenceCode::decode(const Codeword& y) const {
  check_word(y);
  const auto yw = y.words();
  Item best = 0;
  std::uint64_t best_dist = UINT64_MAX;
  for (Item v = 0; v < d_; ++v) {
    const auto cw = codewords_[v].words();
    std::uint64_t dist = 0;
    for (std::size_t k = 0; k < yw.size(); ++k) dist += std::popcount(yw[k] ^ cw[k]);
    if (dist < best_dist) {
      best_dist = dist;
      best = v;
    }
  }
  return best;
}

// ---- concatenated code ----

ConcatenatedCode::ConcatenatedCode(std::uint64_t d, std::uint32_t t, int k)
    : Code(d, t, static_cast<std::uint64_t>(2 * k) * hadamard::kBlockBits, 0.125),
      rs_(2 * k, k) {}

std::shared_ptr<const ConcatenatedCode> ConcatenatedCode::build(std::uint64_t d) {
  if (d < 2) throw InvalidArgument("concatenated code needs d >= 2");
  const std::uint32_t t = std::max<std::uint32_t>(1, ceil_log2(d));
  if (t > kMaxBits) throw InvalidArgument("concatenated code supports d <= 2^64");
  const int k = static_cast<int>((t + 7) / 8);
  return std::shared_ptr<const ConcatenatedCode>(new ConcatenatedCode(d, t, k));
}

Codeword ConcatenatedCode::encode(Item v) const {
  check_item(v);
  std::vector<std::uint8_t> message(rs_.k());
  for (int i = 0; i < rs_.k(); ++i) message[i] = static_cast<std::uint8_t>(v >> (8 * i));
  const auto symbols = rs_.encode(message);
  Codeword x(m_);
  auto out = x.mutable_words();
  for (int b = 0; b < rs_.n(); ++b) {
    const auto& block = hadamard::encode(symbols[b]);
    for (int w = 0; w < 4; ++w) out[4 * b + w] = block[w];
  }
  return x;
}

std::optional<Item> ConcatenatedCode::decode(const Codeword& y) const {
  check_word(y);
  const auto words = y.words();
  std::vector<std::uint8_t> symbols(rs_.n());
  for (int b = 0; b < rs_.n(); ++b) {
    symbols[b] = hadamard::decode(words.subspan(4 * b).first<4>());
  }
  const auto message = rs_.decode(symbols);
  if (!message) return std::nullopt;
  Item v = 0;
  for (int i = rs_.k() - 1; i >= 0; --i) {
    if (8 * i >= 64) {
      if ((*message)[i] != 0) return std::nullopt;
      continue;
    }
    v |= static_cast<Item>((*message)[i]) << (8 * i);
  }
  // Message bits above t, or values past d, are not codewords of items.
  if (t_ < 64 && (v >> t_) != 0) return std::nullopt;
  if (v >= d_) return std::nullopt;
  return v;
}

std::shared_ptr<const Code> build_code(std::uint64_t d, CodeKind kind) {
  if (kind == CodeKind::kReference) return ReferenceCode::build(d);
  return ConcatenatedCode::build(d);
}

Codeword round_to_hypercube(std::span<const double> zbar) {
  if (zbar.empty()) throw InvalidArgument("cannot round an empty vector");
  Codeword y(zbar.size());
  for (std::size_t j = 0; j < zbar.size(); ++j) y.set_negative(j, !(zbar[j] >= 0.0));
  return y;
}

Codeword round_counts(std::span<const std::uint64_t> plus,
                      std::span<const std::uint64_t> minus) {
  if (plus.size() != minus.size() || plus.empty()) {
    throw InvalidArgument("count vectors must be non-empty and equal length");
  }
  Codeword y(plus.size());
  for (std::size_t j = 0; j < plus.size(); ++j) y.set_negative(j, plus[j] < minus[j]);
  return y;
}

}  // namespace ldphh
