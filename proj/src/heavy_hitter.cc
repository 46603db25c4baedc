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

#include "ldphh/heavy_hitter.h"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "ldphh/idle_noise.h"

namespace ldphh {

namespace {

using u128 = unsigned __int128;

std::uint64_t mod_mersenne61(u128 x) {
  std::uint64_t r = static_cast<std::uint64_t>(x & kHashPrime) +
                    static_cast<std::uint64_t>(x >> 61);
  r = (r & kHashPrime) + (r >> 61);
  return r >= kHashPrime ? r - kHashPrime : r;
}

constexpr std::uint64_t kMaxFaithfulCells = std::uint64_t{1} << 27;

SparseReport zero_report(std::uint64_t m, double eps, Rng& rng) {
  return randomize_with(m, eps, rng, [](std::uint64_t) { return 0; });
}

SparseReport fo_report(const MaybeItem& v, const HhStructure& s, Rng& rng) {
  if (!v) return zero_report(s.m_fo(), s.eps_channel(), rng);
  return fo_client_report(*v, s.m_fo(), s.pub(), s.eps_channel(), rng);
}

}  // namespace

HashSeed HashSeed::draw(const PublicRandomness& pub, std::uint32_t t,
                        std::uint32_t ell) {
  if (ell == 0 || ell > 128) throw InvalidArgument("hash seed length must be in [1, 128]");
  HashSeed s;
  s.ell = ell;
  const StreamLabel label{StreamTag::kHashSeed, t, 0};
  s.bits[0] = pub.word(label, 0);
  s.bits[1] = pub.word(label, 1);
  if (ell < 64) {
    s.bits[0] &= (std::uint64_t{1} << ell) - 1;
    s.bits[1] = 0;
  } else if (ell < 128) {
    s.bits[1] &= (std::uint64_t{1} << (ell - 64)) - 1;
  }
  return s;
}

PairwiseHash::PairwiseHash(const PublicRandomness& pub, const HashSeed& seed,
                           std::uint64_t K)
    : K_(K) {
  if (K < 1) throw InvalidArgument("channel count must be positive");
  const StreamLabel label{StreamTag::kHashCoefficients, seed.bits[0], seed.bits[1]};
  std::uint64_t index = 0;
  auto next = [&] {
    for (;;) {
      const std::uint64_t w = pub.word(label, index++) >> 3;
      if (w < kHashPrime) return w;
    }
  };
  do {
    a_ = next();
  } while (a_ == 0);
  b_ = next();
}

std::uint64_t PairwiseHash::operator()(Item v) const {
  if (v >= kHashPrime) throw InvalidArgument("item exceeds the hash prime");
  return mod_mersenne61(static_cast<u128>(a_) * v + b_) % K_;
}

std::uint64_t channel_of(const PublicRandomness& pub, const HashSeed& seed,
                         Item v, std::uint64_t K) {
  return PairwiseHash(pub, seed, K)(v);
}

SparseReport pp_client_report(const MaybeItem& v, const Code& code, double eps,
                              Rng& rng) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!v) return zero_report(code.m(), eps, rng);
  const Codeword x = code.encode(*v);
  return randomize_with(code.m(), eps, rng, [&x](std::uint64_t j) { return x.sign(j); });
}

PpDecode pp_decode(const AggregateState& agg, const Code& code) {
  if (agg.n_total() == 0) throw InvalidArgument("cannot decode an empty channel");
  if (agg.m() != code.m()) throw InvalidArgument("channel dimension does not match the code");
  const Codeword y = round_counts(agg.plus(), agg.minus());
  PpDecode out;
  out.item = code.decode(y);
  if (out.item) out.f_hat = agg.inner_product(code.encode(*out.item));
  return out;
}

double SuccinctHistogram::estimate(Item v) const {
  for (const auto& e : entries) {
    if (e.item == v) return e.frequency;
  }
  return 0.0;
}

bool SuccinctHistogram::contains(Item v) const {
  return std::any_of(entries.begin(), entries.end(),
                     [v](const HistogramEntry& e) { return e.item == v; });
}

SuccinctHistogram prune(const std::vector<Candidate>& candidates, double threshold) {
  SuccinctHistogram h;
  std::unordered_set<Item> seen;
  for (const auto& c : candidates) {
    if (!seen.insert(c.item).second) continue;
    if (c.f_hat >= threshold) h.entries.push_back({c.item, std::clamp(c.f_hat, 0.0, 1.0)});
  }
  return h;
}

std::string histogram_csv(const SuccinctHistogram& h,
                          const std::unordered_map<Item, double>* truth) {
  auto entries = h.entries;
  std::sort(entries.begin(), entries.end(),
            [](const HistogramEntry& a, const HistogramEntry& b) { return a.item < b.item; });
  std::string out = truth ? "item,estimated_frequency,true_frequency\n"
                          : "item,estimated_frequency\n";
  char buf[64];
  for (const auto& e : entries) {
    out += std::to_string(e.item);
    std::snprintf(buf, sizeof(buf), ",%.17g", e.frequency);
    out += buf;
    if (truth) {
      const auto it = truth->find(e.item);
      std::snprintf(buf, sizeof(buf), ",%.17g", it == truth->end() ? 0.0 : it->second);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string to_string(RunMode mode) {
  return mode == RunMode::kFaithful ? "faithful" : "fast";
}

RunMode parse_run_mode(const std::string& s) {
  if (s == "faithful") return RunMode::kFaithful;
  if (s == "fast") return RunMode::kFast;
  throw InvalidArgument("unknown mode: " + s);
}

HhStructure::HhStructure(const HhParams& params, std::shared_ptr<const Code> code,
                         PublicRandomness pub)
    : params_(params),
      fo_params_(derive_fo_params(params.d, params.n, params.eps_channel,
                                  params.beta / 3.0)),
      code_(std::move(code)),
      pub_(std::move(pub)) {
  if (!code_ || code_->d() != params.d) {
    throw InvalidArgument("code universe does not match the parameters");
  }
  if (params.d > kHashPrime) throw InvalidArgument("universe exceeds the hash prime");
  if (params.K > UINT32_MAX || params.T > UINT16_MAX) {
    throw InvalidArgument("channel count overflow: K must fit in 32 bits and T in 16");
  }
  for (std::uint32_t t = 0; t < params.T; ++t) {
    seeds_.push_back(HashSeed::draw(pub_, t, params.ell));
    hashes_.emplace_back(pub_, seeds_.back(), params.K);
  }
}

HhStructure HhStructure::make(const HhParams& params, CodeKind kind,
                              PublicRandomness pub) {
  return HhStructure(params, build_code(params.d, kind), std::move(pub));
}

std::vector<AddressedReport> hh_client_reports(const MaybeItem& v,
                                               const HhStructure& s, Rng& rng) {
  std::optional<Codeword> x;
  if (v) x = s.code().encode(*v);
  const std::uint64_t m = s.m_pp();
  const double eps = s.eps_channel();
  std::vector<AddressedReport> out;
  out.reserve(s.K() * s.T() + 1);
  for (std::uint32_t t = 0; t < s.T(); ++t) {
    const std::uint64_t mine = v ? s.channel_of(t, *v) : s.K();
    for (std::uint64_t k = 0; k < s.K(); ++k) {
      AddressedReport r;
      r.t = static_cast<std::uint16_t>(t);
      r.k = static_cast<std::uint32_t>(k);
      if (k == mine) {
        r.report = randomize_with(m, eps, rng, [&x](std::uint64_t j) { return x->sign(j); });
      } else {
        r.report = zero_report(m, eps, rng);
      }
      out.push_back(r);
    }
  }
  AddressedReport fo;
  fo.fo = true;
  fo.report = fo_report(v, s, rng);
  out.push_back(fo);
  return out;
}

Rng user_rng(const Prf& priv, std::uint64_t user, std::uint64_t run) {
  return Rng(priv, {StreamTag::kUserNoise, user, run});
}

HhResultBuilder::HhResultBuilder(const HhStructure& s, const std::vector<Item>& probes)
    : s_(s) {
  for (Item p : probes) {
    ProbeRecord rec;
    rec.item = p;
    rec.pp_f_hat.assign(s.T(), 0.0);
    rec.pp_recovered.assign(s.T(), false);
    probe_words_.push_back(s.code().encode(p));
    probes_.push_back(std::move(rec));
  }
}

void HhResultBuilder::channel(std::uint32_t t, std::uint64_t k, const AggregateState& agg) {
  ++channels_;
  const PpDecode dec = pp_decode(agg, s_.code());
  if (!dec.item) {
    ++failures_;
  } else if (seen_.insert(*dec.item).second) {
    order_.push_back(*dec.item);
  }
  for (std::size_t i = 0; i < probes_.size(); ++i) {
    auto& rec = probes_[i];
    if (s_.channel_of(t, rec.item) != k) continue;
    rec.pp_f_hat[t] = agg.inner_product(probe_words_[i]);
    rec.pp_recovered[t] = dec.item && *dec.item == rec.item;
  }
}

HhRunResult HhResultBuilder::finish(const AggregateState& fo_state) {
  FrequencyOracle fo(s_.pub(), fo_state.m(), fo_state.eps());
  fo.mutable_state() = fo_state;
  HhRunResult result;
  result.channels = channels_;
  result.decode_failures = failures_;
  result.candidates.reserve(order_.size());
  for (Item v : order_) result.candidates.push_back({v, fo.estimate(v)});
  result.histogram = prune(result.candidates, s_.params().threshold);
  for (auto& rec : probes_) {
    rec.fo_estimate = fo.estimate(rec.item);
    rec.final_estimate = result.histogram.estimate(rec.item);
  }
  result.probes = std::move(probes_);
  return result;
}

HhAggregator::HhAggregator(const HhStructure& s)
    : s_(&s), fo_(s.m_fo(), s.eps_channel()) {
  const std::uint64_t channels = s.K() * s.T();
  if (channels > kMaxFaithfulCells / s.m_pp()) {
    throw InvalidArgument("channel count overflow: " + std::to_string(channels) +
                          " channels are too many to hold in memory; use fast mode");
  }
  channels_.assign(channels, AggregateState(s.m_pp(), s.eps_channel()));
}

void HhAggregator::absorb(const AddressedReport& r) {
  if (r.fo) {
    fo_.absorb(r.report);
    return;
  }
  if (r.t >= s_->T() || r.k >= s_->K()) {
    throw InvalidArgument("report addressed to a nonexistent channel");
  }
  channels_[r.t * s_->K() + r.k].absorb(r.report);
}

const AggregateState& HhAggregator::channel(std::uint32_t t, std::uint64_t k) const {
  return channels_.at(t * s_->K() + k);
}

void HhAggregator::merge(const HhAggregator& other) {
  if (other.channels_.size() != channels_.size()) {
    throw InvalidArgument("cannot merge aggregators of different shapes");
  }
  for (std::size_t i = 0; i < channels_.size(); ++i) channels_[i].merge(other.channels_[i]);
  fo_.merge(other.fo_);
}

HhRunResult HhAggregator::finalize(const std::vector<Item>& probes) const {
  HhResultBuilder builder(*s_, probes);
  for (std::uint32_t t = 0; t < s_->T(); ++t) {
    for (std::uint64_t k = 0; k < s_->K(); ++k) builder.channel(t, k, channel(t, k));
  }
  return builder.finish(fo_);
}

bool HhAggregator::operator==(const HhAggregator& other) const {
  return channels_ == other.channels_ && fo_ == other.fo_;
}

HhRunResult hh_run(const std::vector<MaybeItem>& items, const HhStructure& s,
                   const Prf& priv, const HhRunOptions& options) {
  if (items.size() != s.params().n) {
    throw InvalidArgument("got " + std::to_string(items.size()) + " users but n=" +
                          std::to_string(s.params().n));
  }
  for (const auto& v : items) {
    if (v && *v >= s.params().d) throw InvalidArgument("item outside the universe");
  }

  if (options.mode == RunMode::kFaithful) {
    HhAggregator agg(s);
    for (std::uint64_t i = 0; i < items.size(); ++i) {
      Rng rng = user_rng(priv, i, options.run);
      for (const auto& r : hh_client_reports(items[i], s, rng)) agg.absorb(r);
    }
    return agg.finalize(options.probes);
  }

  const std::uint64_t n = items.size();
  const std::uint64_t m = s.m_pp();
  const double eps = s.eps_channel();
  HhResultBuilder builder(s, options.probes);
  IdleNoiseSampler sampler(m);
  IdleCounts idle;
  AggregateState agg(m, eps);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> bucket;  // (channel, user)
  bucket.reserve(n);
  for (std::uint32_t t = 0; t < s.T(); ++t) {
    Rng rng(priv, {StreamTag::kIdleNoise, options.run, t});
    bucket.clear();
    for (std::uint64_t i = 0; i < n; ++i) {
      if (items[i]) bucket.emplace_back(s.channel_of(t, *items[i]), i);
    }
    std::sort(bucket.begin(), bucket.end());
    std::size_t next = 0;
    for (std::uint64_t k = 0; k < s.K(); ++k) {
      agg.clear();
      std::uint64_t real = 0;
      for (; next < bucket.size() && bucket[next].first == k; ++next, ++real) {
        agg.absorb(pp_client_report(items[bucket[next].second], s.code(), eps, rng));
      }
      sampler.sample(n - real, rng, idle);
      agg.absorb_counts(idle.plus, idle.minus);
      builder.channel(t, k, agg);
    }
  }
  AggregateState fo(s.m_fo(), eps);
  for (std::uint64_t i = 0; i < n; ++i) {
    Rng rng = user_rng(priv, i, options.run);
    fo.absorb(fo_report(items[i], s, rng));
  }
  return builder.finish(fo);
}

}  // namespace ldphh
