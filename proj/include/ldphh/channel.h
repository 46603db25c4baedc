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

#ifndef LDPHH_CHANNEL_H_
#define LDPHH_CHANNEL_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldphh/core.h"
#include "ldphh/prf.h"
#include "ldphh/randomizer.h"

namespace ldphh {

// Row-stochastic matrix of conditional output probabilities P[output | input].
class ChannelMatrix {
 public:
  ChannelMatrix(std::vector<std::string> inputs, std::vector<std::string> outputs,
                std::vector<double> probs);

  std::size_t rows() const { return inputs_.size(); }
  std::size_t cols() const { return outputs_.size(); }
  double at(std::size_t row, std::size_t col) const {
    return probs_[row * outputs_.size() + col];
  }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<double>& probs() const { return probs_; }

  // Keeps the given output columns and renormalizes every row.
  ChannelMatrix restrict_outputs(const std::vector<std::size_t>& cols) const;

  // CSV: header "input,<output labels...>", then one row per input.
  void write_csv(std::ostream& out) const;
  static ChannelMatrix read_csv(std::istream& in);

 private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<double> probs_;
};

// Composition: first `first`, then `second` (outputs of first feed second).
ChannelMatrix compose(const ChannelMatrix& first, const ChannelMatrix& second);

// Channel of the basic randomizer with the given inputs; outputs are the 2m
// pairs (j, sign) labeled "j+" / "j-".
ChannelMatrix basic_randomizer_channel(const std::vector<RandomizerInput>& inputs,
                                       double eps,
                                       std::vector<std::string> labels = {});

class AuditResult {
 public:
  explicit AuditResult(ChannelMatrix channel);

  // max over input pairs and outputs of ln(P[z|v] / P[z|v']); +inf when some
  // output has zero probability under one input but not another.
  double eps_observed() const { return eps_observed_; }

  // max over ordered input pairs of sum_z max(0, P[z|v] - e^eps P[z|v']).
  double delta_at(double eps) const;

 private:
  ChannelMatrix channel_;
  double eps_observed_;
};

AuditResult audit_ldp(const ChannelMatrix& channel);

// Returns v with probability eta, otherwise a uniform item of [0, d).
Item degrade(Item v, double eta, std::uint64_t d, Rng& rng);

// Exact channel of the eta-degrading map on [0, d).
ChannelMatrix degrading_channel(std::uint64_t d, double eta);

// ln(1 + eta e^eps (e^eps - 1)).
double amplified_epsilon(double eps, double eta);

// I(V; Z) in nats for V ~ prior.
double mutual_information(const std::vector<double>& prior,
                          const ChannelMatrix& channel);

}  // namespace ldphh

#endif  // LDPHH_CHANNEL_H_
