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

#ifndef LDPHH_HEAVY_HITTER_H_
#define LDPHH_HEAVY_HITTER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ldphh/codec.h"
#include "ldphh/core.h"
#include "ldphh/freq_oracle.h"
#include "ldphh/prf.h"
#include "ldphh/randomizer.h"

namespace ldphh {

// Mersenne prime 2^61 - 1 used by the pairwise hash family.
inline constexpr std::uint64_t kHashPrime = (std::uint64_t{1} << 61) - 1;

// Public ell-bit seed s_t of one repetition (ell <= 128).
struct HashSeed {
  std::array<std::uint64_t, 2> bits{};
  std::uint32_t ell = 0;

  // Seed of repetition t drawn from the public stream (kHashSeed, t, 0).
  static HashSeed draw(const PublicRandomness& pub, std::uint32_t t,
                       std::uint32_t ell);

  bool operator==(const HashSeed&) const = default;
};

// h(v) = ((a v + b) mod p) mod K with p = 2^61 - 1 and (a, b), a != 0,
// taken from the public stream (kHashCoefficients, seed low, seed high).
class PairwiseHash {
 public:
  PairwiseHash(const PublicRandomness& pub, const HashSeed& seed, std::uint64_t K);

  std::uint64_t K() const { return K_; }
  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }

  // Requires v < p.
  std::uint64_t operator()(Item v) const;

 private:
  std::uint64_t K_;
  std::uint64_t a_;
  std::uint64_t b_;
};

std::uint64_t channel_of(const PublicRandomness& pub, const HashSeed& seed,
                         Item v, std::uint64_t K);

// Basic randomizer applied to encode(v), or to the zero input for no item.
SparseReport pp_client_report(const MaybeItem& v, const Code& code, double eps,
                              Rng& rng);

struct PpDecode {
  MaybeItem item;       // nullopt on decode failure
  double f_hat = 0.0;   // <c(item), zbar>; 0 on failure
};

// Rounds zbar to the hypercube, decodes, and estimates the decoded item.
PpDecode pp_decode(const AggregateState& agg, const Code& code);

struct HistogramEntry {
  Item item = 0;
  double frequency = 0.0;

  bool operator==(const HistogramEntry&) const = default;
};

// Heavy hitters with estimated frequencies; unlisted items estimate to 0.
struct SuccinctHistogram {
  std::vector<HistogramEntry> entries;

  double estimate(Item v) const;
  bool contains(Item v) const;
  std::size_t size() const { return entries.size(); }
  bool operator==(const SuccinctHistogram&) const = default;
};

struct Candidate {
  Item item = 0;
  double f_hat = 0.0;
};

// Keeps candidates with f_hat >= threshold (first occurrence of each item),
// with frequencies clipped to [0, 1].
SuccinctHistogram prune(const std::vector<Candidate>& candidates, double threshold);

// CSV rows "item,estimated_frequency" (plus ",true_frequency" when truth is
// given) sorted by item, with a header line.
std::string histogram_csv(const SuccinctHistogram& h,
                          const std::unordered_map<Item, double>* truth = nullptr);

enum class RunMode { kFaithful, kFast };

std::string to_string(RunMode mode);
RunMode parse_run_mode(const std::string& s);

// Public structure of one succinct-histogram run: parameters, code, per
// repetition hashes, and the frequency-oracle channel dimensions.
class HhStructure {
 public:
  HhStructure(const HhParams& params, std::shared_ptr<const Code> code,
              PublicRandomness pub);

  static HhStructure make(const HhParams& params, CodeKind kind,
                          PublicRandomness pub);

  const HhParams& params() const { return params_; }
  const FoParams& fo_params() const { return fo_params_; }
  const Code& code() const { return *code_; }
  std::shared_ptr<const Code> code_ptr() const { return code_; }
  const PublicRandomness& pub() const { return pub_; }
  const PairwiseHash& hash(std::uint32_t t) const { return hashes_[t]; }
  const HashSeed& seed(std::uint32_t t) const { return seeds_[t]; }

  std::uint64_t K() const { return params_.K; }
  std::uint32_t T() const { return params_.T; }
  std::uint64_t m_pp() const { return code_->m(); }
  std::uint64_t m_fo() const { return fo_params_.m_fo; }
  double eps_channel() const { return params_.eps_channel; }

  std::uint64_t channel_of(std::uint32_t t, Item v) const { return hashes_[t](v); }
  const std::vector<PairwiseHash>& hashes() const { return hashes_; }

 private:
  HhParams params_;
  FoParams fo_params_;
  std::shared_ptr<const Code> code_;
  PublicRandomness pub_;
  std::vector<HashSeed> seeds_;
  std::vector<PairwiseHash> hashes_;
};

// One report of a client, addressed to PP channel (t, k) or, with fo = true,
// to the frequency-oracle channel.
struct AddressedReport {
  bool fo = false;
  std::uint16_t t = 0;
  std::uint32_t k = 0;
  SparseReport report;
};

// All K*T + 1 reports of one user, in channel order (t, k) then FO.
std::vector<AddressedReport> hh_client_reports(const MaybeItem& v,
                                               const HhStructure& s, Rng& rng);

// Private randomness of user `user` in run `run`.
Rng user_rng(const Prf& priv, std::uint64_t user, std::uint64_t run);

struct ProbeRecord {
  Item item = 0;
  std::vector<double> pp_f_hat;     // per repetition, for the item's channel
  std::vector<bool> pp_recovered;   // decoded to the item
  double fo_estimate = 0.0;
  double final_estimate = 0.0;      // histogram value, 0 if unlisted
};

struct HhRunResult {
  SuccinctHistogram histogram;
  std::vector<Candidate> candidates;  // distinct decoded items with FO estimates
  std::uint64_t channels = 0;
  std::uint64_t decode_failures = 0;
  std::vector<ProbeRecord> probes;
};

// Decodes channels fed in order (t, k), collects distinct decoded items, and
// estimates and prunes them with the frequency-oracle channel.
class HhResultBuilder {
 public:
  HhResultBuilder(const HhStructure& s, const std::vector<Item>& probes);

  void channel(std::uint32_t t, std::uint64_t k, const AggregateState& agg);
  HhRunResult finish(const AggregateState& fo_state);

 private:
  const HhStructure& s_;
  std::vector<ProbeRecord> probes_;
  std::vector<Codeword> probe_words_;
  std::unordered_set<Item> seen_;
  std::vector<Item> order_;
  std::uint64_t channels_ = 0;
  std::uint64_t failures_ = 0;
};

// Server-side state: one aggregate per PP channel plus the FO channel.
class HhAggregator {
 public:
  explicit HhAggregator(const HhStructure& s);

  const HhStructure& structure() const { return *s_; }

  // Throws InvalidArgument on out-of-range addresses or positions.
  void absorb(const AddressedReport& r);

  const AggregateState& channel(std::uint32_t t, std::uint64_t k) const;
  const AggregateState& fo() const { return fo_; }
  void merge(const HhAggregator& other);

  HhRunResult finalize(const std::vector<Item>& probes = {}) const;

  bool operator==(const HhAggregator& other) const;

 private:
  const HhStructure* s_;
  std::vector<AggregateState> channels_;
  AggregateState fo_;
};

struct HhRunOptions {
  RunMode mode = RunMode::kFast;
  std::uint64_t run = 0;
  std::vector<Item> probes;
};

// Succinct-histogram protocol over the users' items. In faithful mode every
// user reports in every channel; in fast mode the idle users of each channel
// are replaced by an exact sample of their joint counts.
HhRunResult hh_run(const std::vector<MaybeItem>& items, const HhStructure& s,
                   const Prf& priv, const HhRunOptions& options);

}  // namespace ldphh

#endif  // LDPHH_HEAVY_HITTER_H_
