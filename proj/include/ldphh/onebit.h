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

#ifndef LDPHH_ONEBIT_H_
#define LDPHH_ONEBIT_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "ldphh/channel.h"
#include "ldphh/codec.h"
#include "ldphh/core.h"
#include "ldphh/freq_oracle.h"
#include "ldphh/heavy_hitter.h"
#include "ldphh/prf.h"

namespace ldphh {

// One (position, sign) component of a public string.
struct PublicComponent {
  std::uint32_t position = 0;
  std::int8_t sign = +1;

  bool operator==(const PublicComponent&) const = default;
};

// Component structure of the composite randomizer: K*T promise-protocol
// channels (component t*K + k) followed by an optional frequency-oracle
// channel (component K*T), each run at eps_channel.
class OneBitStructure {
 public:
  OneBitStructure(std::shared_ptr<const Code> code, std::vector<PairwiseHash> hashes,
                  std::uint64_t K, bool with_fo, std::uint64_t m_fo,
                  double eps_channel, PublicRandomness pub);

  // Composite randomizer of the succinct-histogram protocol.
  static OneBitStructure composite(const HhStructure& hh);

  // A single frequency-oracle randomizer at eps.
  static OneBitStructure fo_only(PublicRandomness pub, std::uint64_t m_fo, double eps);

  std::uint64_t K() const { return K_; }
  std::uint32_t T() const { return static_cast<std::uint32_t>(hashes_.size()); }
  bool with_fo() const { return with_fo_; }
  std::uint64_t m_pp() const { return code_ ? code_->m() : 0; }
  std::uint64_t m_fo() const { return m_fo_; }
  double eps_channel() const { return eps_channel_; }
  const Code* code() const { return code_.get(); }
  const PublicRandomness& pub() const { return pub_; }
  const PairwiseHash& hash(std::uint32_t t) const { return hashes_[t]; }

  std::uint64_t components() const { return K_ * T() + (with_fo_ ? 1 : 0); }
  std::uint64_t fo_component() const { return K_ * T(); }
  std::uint64_t component_m(std::uint64_t c) const;

  // (2T + [FO]) * eps_channel; required to be at most ln 2.
  double total_epsilon() const;

  // Components whose distribution depends on v, in increasing order.
  std::vector<std::uint64_t> item_components(Item v) const;

  // Sign of the input of component c for item v (component must be one of
  // item_components(v)).
  int input_sign(Item v, std::uint64_t c, std::uint32_t position) const;

 private:
  std::shared_ptr<const Code> code_;
  std::vector<PairwiseHash> hashes_;
  std::uint64_t K_;
  bool with_fo_;
  std::uint64_t m_fo_;
  double eps_channel_;
  PublicRandomness pub_;
};

// Component c of user `user`'s public string in run `run`, drawn from block c
// of the public stream (kPublicString, user, run). Uniform over the 2m
// outcomes of that component.
PublicComponent public_component(const OneBitStructure& s, std::uint64_t user,
                                 std::uint64_t run, std::uint64_t c);

std::vector<PublicComponent> public_string(const OneBitStructure& s,
                                           std::uint64_t user, std::uint64_t run);

// Likelihood-ratio factor of one item-dependent component.
double component_ratio(bool sign_matches, double eps_channel);

// p = 1/2 * prod over item-dependent components of the likelihood ratio
// between the item's and the no-item randomizer at the public string.
double acceptance_prob(const MaybeItem& v, std::uint64_t user, std::uint64_t run,
                       const OneBitStructure& s);

// Same, for an explicitly given full public string.
double acceptance_prob(const MaybeItem& v, const std::vector<PublicComponent>& y,
                       const OneBitStructure& s);

// Bernoulli(acceptance_prob) using the private coin stream
// (kOneBitCoin, user, run).
bool onebit_client(const MaybeItem& v, std::uint64_t user, std::uint64_t run,
                   const OneBitStructure& s, const Prf& priv);

bool onebit_client(const MaybeItem& v, const std::vector<PublicComponent>& y,
                   const OneBitStructure& s, Rng& rng);

// Public strings of the accepted users (bits[i] != 0), regenerated in user
// order.
std::vector<std::vector<PublicComponent>> onebit_server_collect(
    const std::vector<std::uint8_t>& bits, const OneBitStructure& s,
    std::uint64_t run);

// A public string as addressed reports of the composite randomizer.
std::vector<AddressedReport> as_reports(const std::vector<PublicComponent>& y,
                                        const OneBitStructure& s);

// Exact probability of the full public string y under Q(v) (nullopt v is the
// no-item randomizer).
double composite_probability(const MaybeItem& v, const std::vector<PublicComponent>& y,
                             const OneBitStructure& s);

// Every public string of a small structure, in lexicographic component order.
std::vector<std::vector<PublicComponent>> enumerate_public_strings(
    const OneBitStructure& s, std::uint64_t cap = kDefaultEnumerationCap);

// Exact channel item -> (y, b) over items 0..d-1, marginalising nothing.
ChannelMatrix onebit_joint_channel(const OneBitStructure& s, std::uint64_t d);

// Exact channel item -> b, with y marginalised out.
ChannelMatrix onebit_bit_channel(const OneBitStructure& s, std::uint64_t d);

struct OneBitRunResult {
  std::uint64_t accepted = 0;
  HhRunResult result;
};

// Succinct-histogram protocol where each user sends one bit. Accepted public
// strings feed the usual aggregation; in fast mode their idle components are
// drawn as idle noise.
OneBitRunResult onebit_hh_run(const std::vector<MaybeItem>& items,
                              const HhStructure& hh, const Prf& priv,
                              const HhRunOptions& options);

struct OneBitFoResult {
  std::uint64_t accepted = 0;
  AggregateState state;
};

// Frequency oracle where each user sends one bit.
OneBitFoResult onebit_fo_run(const std::vector<MaybeItem>& items,
                             const OneBitStructure& s, const Prf& priv,
                             std::uint64_t run);

}  // namespace ldphh

#endif  // LDPHH_ONEBIT_H_
