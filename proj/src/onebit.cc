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

#include "ldphh/onebit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ldphh/idle_noise.h"

namespace ldphh {

namespace {

using u128 = unsigned __int128;

std::uint64_t load_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::string public_string_label(const std::vector<PublicComponent>& y) {
  std::string s;
  for (std::size_t c = 0; c < y.size(); ++c) {
    if (c) s += '|';
    s += std::to_string(y[c].position);
    s += y[c].sign > 0 ? '+' : '-';
  }
  return s;
}

}  // namespace

OneBitStructure::OneBitStructure(std::shared_ptr<const Code> code,
                                 std::vector<PairwiseHash> hashes, std::uint64_t K,
                                 bool with_fo, std::uint64_t m_fo, double eps_channel,
                                 PublicRandomness pub)
    : code_(std::move(code)),
      hashes_(std::move(hashes)),
      K_(K),
      with_fo_(with_fo),
      m_fo_(m_fo),
      eps_channel_(eps_channel),
      pub_(std::move(pub)) {
  if (!(eps_channel > 0.0)) throw InvalidArgument("eps must be positive");
  if (!hashes_.empty() && !code_) throw InvalidArgument("repetitions need a code");
  if (with_fo && m_fo == 0) throw InvalidArgument("oracle dimension must be positive");
  for (const auto& h : hashes_) {
    if (h.K() != K_) throw InvalidArgument("hash range does not match K");
  }
  if (components() == 0) throw InvalidArgument("structure has no components");
  const double total = total_epsilon();
  if (total > std::numbers::ln2 * (1.0 + 1e-12)) {
    throw InvalidArgument("one-bit transform needs total eps <= ln 2, got " +
                          std::to_string(total));
  }
}

OneBitStructure OneBitStructure::composite(const HhStructure& hh) {
  return OneBitStructure(hh.code_ptr(), hh.hashes(), hh.K(), true, hh.m_fo(),
                         hh.eps_channel(), hh.pub());
}

OneBitStructure OneBitStructure::fo_only(PublicRandomness pub, std::uint64_t m_fo,
                                         double eps) {
  return OneBitStructure(nullptr, {}, 0, true, m_fo, eps, std::move(pub));
}

std::uint64_t OneBitStructure::component_m(std::uint64_t c) const {
  if (c >= components()) throw InvalidArgument("component index out of range");
  return (with_fo_ && c == fo_component()) ? m_fo_ : code_->m();
}

double OneBitStructure::total_epsilon() const {
  return (2.0 * T() + (with_fo_ ? 1.0 : 0.0)) * eps_channel_;
}

std::vector<std::uint64_t> OneBitStructure::item_components(Item v) const {
  std::vector<std::uint64_t> out;
  out.reserve(T() + 1);
  for (std::uint32_t t = 0; t < T(); ++t) out.push_back(t * K_ + hashes_[t](v));
  if (with_fo_) out.push_back(fo_component());
  return out;
}

int OneBitStructure::input_sign(Item v, std::uint64_t c, std::uint32_t position) const {
  if (with_fo_ && c == fo_component()) {
    return phi_negative(pub_, v, position) ? -1 : +1;
  }
  return code_->encode(v).sign(position);
}

PublicComponent public_component(const OneBitStructure& s, std::uint64_t user,
                                 std::uint64_t run, std::uint64_t c) {
  const std::uint64_t m = s.component_m(c);
  const auto blk = s.pub().block({StreamTag::kPublicString, user, run}, c);
  // Words 0..6 feed an exact multiply-and-reject draw of the position; word 7
  // gives the sign.
  const std::uint64_t thresh = (0 - m) % m;
  for (int i = 0; i < 7; ++i) {
    const u128 prod = static_cast<u128>(load_le(blk.data() + 8 * i)) * m;
    if (static_cast<std::uint64_t>(prod) >= thresh) {
      PublicComponent out;
      out.position = static_cast<std::uint32_t>(prod >> 64);
      out.sign = (load_le(blk.data() + 56) & 1u) ? +1 : -1;
      return out;
    }
  }
  throw Error("public string block exhausted");
}

std::vector<PublicComponent> public_string(const OneBitStructure& s,
                                           std::uint64_t user, std::uint64_t run) {
  std::vector<PublicComponent> y(s.components());
  for (std::uint64_t c = 0; c < y.size(); ++c) y[c] = public_component(s, user, run, c);
  return y;
}

double component_ratio(bool sign_matches, double eps_channel) {
  // Pr[Q(v) = y_c] / Pr[Q(no item) = y_c] = (1/m)(e^e'/(e^e'+1)) / (1/(2m)).
  return sign_matches ? 2.0 / (1.0 + std::exp(-eps_channel))
                      : 2.0 / (std::exp(eps_channel) + 1.0);
}

double acceptance_prob(const MaybeItem& v, std::uint64_t user, std::uint64_t run,
                       const OneBitStructure& s) {
  if (!v) return 0.5;
  double p = 0.5;
  for (std::uint64_t c : s.item_components(*v)) {
    const PublicComponent y = public_component(s, user, run, c);
    p *= component_ratio(s.input_sign(*v, c, y.position) == y.sign, s.eps_channel());
  }
  return p;
}

double acceptance_prob(const MaybeItem& v, const std::vector<PublicComponent>& y,
                       const OneBitStructure& s) {
  if (y.size() != s.components()) {
    throw InvalidArgument("public string has the wrong number of components");
  }
  if (!v) return 0.5;
  double p = 0.5;
  for (std::uint64_t c : s.item_components(*v)) {
    p *= component_ratio(s.input_sign(*v, c, y[c].position) == y[c].sign,
                         s.eps_channel());
  }
  return p;
}

bool onebit_client(const MaybeItem& v, std::uint64_t user, std::uint64_t run,
                   const OneBitStructure& s, const Prf& priv) {
  Rng coin(priv, {StreamTag::kOneBitCoin, user, run});
  return coin.bernoulli(acceptance_prob(v, user, run, s));
}

bool onebit_client(const MaybeItem& v, const std::vector<PublicComponent>& y,
                   const OneBitStructure& s, Rng& rng) {
  return rng.bernoulli(acceptance_prob(v, y, s));
}

std::vector<std::vector<PublicComponent>> onebit_server_collect(
    const std::vector<std::uint8_t>& bits, const OneBitStructure& s,
    std::uint64_t run) {
  std::vector<std::vector<PublicComponent>> out;
  for (std::uint64_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.push_back(public_string(s, i, run));
  }
  return out;
}

std::vector<AddressedReport> as_reports(const std::vector<PublicComponent>& y,
                                        const OneBitStructure& s) {
  if (y.size() != s.components()) {
    throw InvalidArgument("public string has the wrong number of components");
  }
  std::vector<AddressedReport> out(y.size());
  for (std::uint64_t c = 0; c < y.size(); ++c) {
    auto& r = out[c];
    r.report = {y[c].position, y[c].sign};
    if (s.with_fo() && c == s.fo_component()) {
      r.fo = true;
    } else {
      r.t = static_cast<std::uint16_t>(c / s.K());
      r.k = static_cast<std::uint32_t>(c % s.K());
    }
  }
  return out;
}

double composite_probability(const MaybeItem& v, const std::vector<PublicComponent>& y,
                             const OneBitStructure& s) {
  if (y.size() != s.components()) {
    throw InvalidArgument("public string has the wrong number of components");
  }
  double p = 1.0;
  for (std::uint64_t c = 0; c < y.size(); ++c) p *= 0.5 / static_cast<double>(s.component_m(c));
  if (!v) return p;
  for (std::uint64_t c : s.item_components(*v)) {
    p *= component_ratio(s.input_sign(*v, c, y[c].position) == y[c].sign,
                         s.eps_channel());
  }
  return p;
}

std::vector<std::vector<PublicComponent>> enumerate_public_strings(
    const OneBitStructure& s, std::uint64_t cap) {
  const std::uint64_t comps = s.components();
  std::uint64_t total = 1;
  for (std::uint64_t c = 0; c < comps; ++c) {
    const std::uint64_t radix = 2 * s.component_m(c);
    if (total > cap / radix) {
      throw InvalidArgument("public string space exceeds the enumeration cap");
    }
    total *= radix;
  }
  std::vector<std::vector<PublicComponent>> out;
  out.reserve(total);
  std::vector<std::uint64_t> digits(comps, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<PublicComponent> y(comps);
    for (std::uint64_t c = 0; c < comps; ++c) {
      y[c].position = static_cast<std::uint32_t>(digits[c] / 2);
      y[c].sign = digits[c] % 2 == 0 ? +1 : -1;
    }
    out.push_back(std::move(y));
    for (std::int64_t c = static_cast<std::int64_t>(comps) - 1; c >= 0; --c) {
      if (++digits[c] < 2 * s.component_m(c)) break;
      digits[c] = 0;
    }
  }
  return out;
}

ChannelMatrix onebit_joint_channel(const OneBitStructure& s, std::uint64_t d) {
  const auto ys = enumerate_public_strings(s);
  std::vector<std::string> inputs;
  for (Item v = 0; v < d; ++v) inputs.push_back(std::to_string(v));
  std::vector<std::string> outputs;
  for (const auto& y : ys) {
    const std::string label = public_string_label(y);
    outputs.push_back(label + "#1");
    outputs.push_back(label + "#0");
  }
  std::vector<double> probs;
  probs.reserve(d * outputs.size());
  for (Item v = 0; v < d; ++v) {
    for (const auto& y : ys) {
      const double base = composite_probability(std::nullopt, y, s);
      const double p = acceptance_prob(v, y, s);
      probs.push_back(base * p);
      probs.push_back(base * (1.0 - p));
    }
  }
  return ChannelMatrix(std::move(inputs), std::move(outputs), std::move(probs));
}

ChannelMatrix onebit_bit_channel(const OneBitStructure& s, std::uint64_t d) {
  const auto ys = enumerate_public_strings(s);
  std::vector<std::string> inputs;
  for (Item v = 0; v < d; ++v) inputs.push_back(std::to_string(v));
  std::vector<double> probs;
  for (Item v = 0; v < d; ++v) {
    double accept = 0.0;
    for (const auto& y : ys) {
      accept += composite_probability(std::nullopt, y, s) * acceptance_prob(v, y, s);
    }
    probs.push_back(accept);
    probs.push_back(1.0 - accept);
  }
  return ChannelMatrix(std::move(inputs), {"b=1", "b=0"}, std::move(probs));
}

OneBitRunResult onebit_hh_run(const std::vector<MaybeItem>& items,
                              const HhStructure& hh, const Prf& priv,
                              const HhRunOptions& options) {
  if (items.size() != hh.params().n) {
    throw InvalidArgument("got " + std::to_string(items.size()) + " users but n=" +
                          std::to_string(hh.params().n));
  }
  const OneBitStructure s = OneBitStructure::composite(hh);
  std::vector<std::uint8_t> bits(items.size());
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < items.size(); ++i) {
    if (items[i] && *items[i] >= hh.params().d) {
      throw InvalidArgument("item outside the universe");
    }
    bits[i] = onebit_client(items[i], i, options.run, s, priv) ? 1 : 0;
    accepted += bits[i];
  }
  OneBitRunResult out;
  out.accepted = accepted;
  if (accepted == 0) throw Error("no user accepted; nothing to aggregate");

  if (options.mode == RunMode::kFaithful) {
    HhAggregator agg(hh);
    for (const auto& y : onebit_server_collect(bits, s, options.run)) {
      for (const auto& r : as_reports(y, s)) agg.absorb(r);
    }
    out.result = agg.finalize(options.probes);
    return out;
  }

  HhResultBuilder builder(hh, options.probes);
  IdleNoiseSampler sampler(hh.m_pp());
  IdleCounts idle;
  AggregateState agg(hh.m_pp(), hh.eps_channel());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> bucket;
  for (std::uint32_t t = 0; t < hh.T(); ++t) {
    Rng rng(priv, {StreamTag::kIdleNoise, options.run, t});
    bucket.clear();
    for (std::uint64_t i = 0; i < items.size(); ++i) {
      if (bits[i] && items[i]) bucket.emplace_back(hh.channel_of(t, *items[i]), i);
    }
    std::sort(bucket.begin(), bucket.end());
    std::size_t next = 0;
    for (std::uint64_t k = 0; k < hh.K(); ++k) {
      agg.clear();
      std::uint64_t real = 0;
      for (; next < bucket.size() && bucket[next].first == k; ++next, ++real) {
        const PublicComponent y =
            public_component(s, bucket[next].second, options.run, t * hh.K() + k);
        agg.absorb({y.position, y.sign});
      }
      sampler.sample(accepted - real, rng, idle);
      agg.absorb_counts(idle.plus, idle.minus);
      builder.channel(t, k, agg);
    }
  }
  AggregateState fo(hh.m_fo(), hh.eps_channel());
  for (std::uint64_t i = 0; i < items.size(); ++i) {
    if (!bits[i]) continue;
    const PublicComponent y = public_component(s, i, options.run, s.fo_component());
    fo.absorb({y.position, y.sign});
  }
  out.result = builder.finish(fo);
  return out;
}

OneBitFoResult onebit_fo_run(const std::vector<MaybeItem>& items,
                             const OneBitStructure& s, const Prf& priv,
                             std::uint64_t run) {
  if (!s.with_fo()) throw InvalidArgument("structure has no oracle component");
  OneBitFoResult out{0, AggregateState(s.m_fo(), s.eps_channel())};
  for (std::uint64_t i = 0; i < items.size(); ++i) {
    if (!onebit_client(items[i], i, run, s, priv)) continue;
    const PublicComponent y = public_component(s, i, run, s.fo_component());
    out.state.absorb({y.position, y.sign});
    ++out.accepted;
  }
  return out;
}

}  // namespace ldphh
