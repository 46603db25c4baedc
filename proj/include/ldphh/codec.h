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

#ifndef LDPHH_CODEC_H_
#define LDPHH_CODEC_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldphh/codeword.h"
#include "ldphh/core.h"
#include "ldphh/reed_solomon.h"

namespace ldphh {

enum class CodeKind { kReference, kConcatenated };

std::string to_string(CodeKind kind);
CodeKind parse_code_kind(const std::string& s);

// Small header describing a code, embedded in experiment outputs.
struct CodeDescription {
  CodeKind kind;
  std::uint64_t d;
  std::uint32_t t;
  std::uint64_t m;
  double zeta_eff;
  std::uint64_t build_seed;

  // "kind=concatenated;d=65536;t=16;m=1024;zeta_eff=0.125;build_seed=0"
  std::string to_header() const;
};

// Binary (d, m, zeta)-code over the scaled hypercube. Distinct codewords
// satisfy <x, x'> <= 1 - 2 zeta_eff, and decode recovers any codeword
// corrupted in fewer than m * zeta_eff / 2 coordinates.
class Code {
 public:
  virtual ~Code() = default;

  std::uint64_t d() const { return d_; }
  std::uint32_t t() const { return t_; }
  std::uint64_t m() const { return m_; }
  double zeta_eff() const { return zeta_eff_; }
  virtual CodeKind kind() const = 0;
  virtual std::uint64_t build_seed() const { return 0; }
  CodeDescription describe() const;

  // Throws InvalidArgument when v >= d.
  virtual Codeword encode(Item v) const = 0;

  // nullopt signals a decoding failure; callers treat it as "no candidate".
  virtual std::optional<Item> decode(const Codeword& y) const = 0;

 protected:
  Code(std::uint64_t d, std::uint32_t t, std::uint64_t m, double zeta_eff)
      : d_(d), t_(t), m_(m), zeta_eff_(zeta_eff) {}
  void check_item(Item v) const;
  void check_word(const Codeword& y) const;

  std::uint64_t d_;
  std::uint32_t t_;
  std::uint64_t m_;
  double zeta_eff_;
};

// Pseudorandom linear code with nearest-codeword decoding. The generator
// matrix comes from the fixed public key Prf::from_seed(kReferenceCodeSeed);
// its relative distance is measured exhaustively at build time.
class ReferenceCode final : public Code {
 public:
  static constexpr std::uint64_t kReferenceCodeSeed = 0x4c44504852454643ull;
  static constexpr std::uint64_t kMaxD = std::uint64_t{1} << 16;

  // m == 0 selects the default block length max(32, 16 t).
  static std::shared_ptr<const ReferenceCode> build(std::uint64_t d,
                                                    std::uint64_t m = 0);

  CodeKind kind() const override { return CodeKind::kReference; }
  std::uint64_t build_seed() const override { return attempt_; }
  std::uint64_t min_distance() const { return min_distance_; }

  Codeword encode(Item v) const override;
  std::optional<Item> decode(const Codeword& y) const override;

 private:
  ReferenceCode(std::uint64_t d, std::uint32_t t, std::uint64_t m,
                std::vector<Codeword> rows, std::uint64_t min_distance,
                std::uint64_t attempt);

  std::vector<Codeword> rows_;       // generator rows, one per message bit
  std::vector<Codeword> codewords_;  // all d codewords, for decoding
  std::uint64_t min_distance_;
  std::uint64_t attempt_;
};

// Reed-Solomon RS(2k, k) over GF(2^8) concatenated with the [256, 8]
// Hadamard code. Inner blocks decode by maximum likelihood, the outer code by
// unique decoding, giving zeta_eff = 1/8.
class ConcatenatedCode final : public Code {
 public:
  static constexpr std::uint32_t kMaxBits = 64;

  static std::shared_ptr<const ConcatenatedCode> build(std::uint64_t d);

  CodeKind kind() const override { return CodeKind::kConcatenated; }
  int data_symbols() const { return rs_.k(); }
  int code_symbols() const { return rs_.n(); }

  Codeword encode(Item v) const override;
  std::optional<Item> decode(const Codeword& y) const override;

 private:
  ConcatenatedCode(std::uint64_t d, std::uint32_t t, int k);

  ReedSolomon rs_;
};

std::shared_ptr<const Code> build_code(std::uint64_t d, CodeKind kind);

// y_j = +1/sqrt(m) if zbar_j >= 0, else -1/sqrt(m).
Codeword round_to_hypercube(std::span<const double> zbar);

// Same rounding applied to zbar_j proportional to plus_j - minus_j.
Codeword round_counts(std::span<const std::uint64_t> plus,
                      std::span<const std::uint64_t> minus);

}  // namespace ldphh

#endif  // LDPHH_CODEC_H_
