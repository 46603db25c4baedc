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

#include "ldphh/channel.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ldphh {

namespace {

constexpr double kRowTolerance = 1e-12;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

ChannelMatrix::ChannelMatrix(std::vector<std::string> inputs,
                             std::vector<std::string> outputs,
                             std::vector<double> probs)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      probs_(std::move(probs)) {
  if (inputs_.empty() || outputs_.empty()) {
    throw InvalidArgument("channel needs at least one input and one output");
  }
  if (probs_.size() != inputs_.size() * outputs_.size()) {
    throw InvalidArgument("channel probability matrix has the wrong size");
  }
  for (std::size_t r = 0; r < rows(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols(); ++c) {
      const double p = at(r, c);
      if (!(p >= 0.0)) {
        throw InvalidArgument("channel row '" + inputs_[r] +
                              "' has a negative or NaN entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance * std::max<double>(1.0, cols())) {
      std::ostringstream msg;
      msg << "channel row '" << inputs_[r] << "' sums to " << sum;
      throw InvalidArgument(msg.str());
    }
  }
}

ChannelMatrix ChannelMatrix::restrict_outputs(
    const std::vector<std::size_t>& cols_kept) const {
  std::vector<std::string> outs;
  for (auto c : cols_kept) outs.push_back(outputs_.at(c));
  std::vector<double> p(rows() * cols_kept.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    double sum = 0.0;
    for (auto c : cols_kept) sum += at(r, c);
    if (sum <= 0.0) {
      throw InvalidArgument("row '" + inputs_[r] + "' has no mass on the slice");
    }
    for (std::size_t i = 0; i < cols_kept.size(); ++i) {
      p[r * cols_kept.size() + i] = at(r, cols_kept[i]) / sum;
    }
  }
  return ChannelMatrix(inputs_, std::move(outs), std::move(p));
}

void ChannelMatrix::write_csv(std::ostream& out) const {
  out << "input";
  for (const auto& o : outputs_) out << ',' << o;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t r = 0; r < rows(); ++r) {
    out << inputs_[r];
    for (std::size_t c = 0; c < cols(); ++c) out << ',' << at(r, c);
    out << '\n';
  }
  out.precision(old_precision);
}

ChannelMatrix ChannelMatrix::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("channel CSV is empty");
  auto header = split_csv_line(line);
  if (header.size() < 2) throw InvalidArgument("channel CSV header has no outputs");
  std::vector<std::string> outputs(header.begin() + 1, header.end());
  std::vector<std::string> inputs;
  std::vector<double> probs;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw InvalidArgument("channel CSV row has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(header.size()));
    }
    inputs.push_back(cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      try {
        probs.push_back(std::stod(cells[i]));
      } catch (const std::exception&) {
        throw InvalidArgument("channel CSV has a non-numeric cell: " + cells[i]);
      }
    }
  }
  return ChannelMatrix(std::move(inputs), std::move(outputs), std::move(probs));
}

ChannelMatrix compose(const ChannelMatrix& first, const ChannelMatrix& second) {
  if (first.cols() != second.rows()) {
    throw InvalidArgument("cannot compose channels: output/input size mismatch");
  }
  std::vector<double> p(first.rows() * second.cols(), 0.0);
  for (std::size_t r = 0; r < first.rows(); ++r) {
    for (std::size_t k = 0; k < first.cols(); ++k) {
      const double a = first.at(r, k);
      if (a == 0.0) continue;
      for (std::size_t c = 0; c < second.cols(); ++c) {
        p[r * second.cols() + c] += a * second.at(k, c);
      }
    }
  }
  return ChannelMatrix(first.inputs(), second.outputs(), std::move(p));
}

ChannelMatrix basic_randomizer_channel(const std::vector<RandomizerInput>& inputs,
                                       double eps,
                                       std::vector<std::string> labels) {
  if (inputs.empty()) throw InvalidArgument("no randomizer inputs");
  const std::uint64_t m = inputs.front().m();
  if (labels.empty()) {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      labels.push_back(inputs[i].is_zero() ? "zero" : "x" + std::to_string(i));
    }
  }
  std::vector<std::string> outputs;
  outputs.reserve(2 * m);
  for (std::uint64_t j = 0; j < m; ++j) {
    outputs.push_back(std::to_string(j) + "+");
    outputs.push_back(std::to_string(j) + "-");
  }
  std::vector<double> probs;
  probs.reserve(inputs.size() * 2 * m);
  for (const auto& x : inputs) {
    if (x.m() != m) throw InvalidArgument("randomizer inputs differ in length");
    auto row = report_distribution(x, eps);
    probs.insert(probs.end(), row.begin(), row.end());
  }
  return ChannelMatrix(std::move(labels), std::move(outputs), std::move(probs));
}

AuditResult::AuditResult(ChannelMatrix channel)
    : channel_(std::move(channel)), eps_observed_(0.0) {
  const double inf = std::numeric_limits<double>::infinity();
  // The largest pairwise ratio in a column is its max over its min.
  for (std::size_t c = 0; c < channel_.cols(); ++c) {
    double lo = inf;
    double hi = 0.0;
    for (std::size_t r = 0; r < channel_.rows(); ++r) {
      lo = std::min(lo, channel_.at(r, c));
      hi = std::max(hi, channel_.at(r, c));
    }
    if (hi == 0.0) continue;  // 0/0 everywhere
    if (lo == 0.0) {
      eps_observed_ = inf;
      return;
    }
    eps_observed_ = std::max(eps_observed_, std::log(hi / lo));
  }
}

double AuditResult::delta_at(double eps) const {
  const double scale = std::exp(eps);
  double worst = 0.0;
  for (std::size_t v = 0; v < channel_.rows(); ++v) {
    for (std::size_t w = 0; w < channel_.rows(); ++w) {
      if (v == w) continue;
      double excess = 0.0;
      for (std::size_t c = 0; c < channel_.cols(); ++c) {
        excess += std::max(0.0, channel_.at(v, c) - scale * channel_.at(w, c));
      }
      worst = std::max(worst, excess);
    }
  }
  return worst;
}

AuditResult audit_ldp(const ChannelMatrix& channel) { return AuditResult(channel); }

Item degrade(Item v, double eta, std::uint64_t d, Rng& rng) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
  if (d == 0) throw InvalidArgument("universe must be non-empty");
  if (rng.bernoulli(eta)) return v;
  return rng.uniform(d);
}

ChannelMatrix degrading_channel(std::uint64_t d, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
  std::vector<std::string> labels;
  for (std::uint64_t v = 0; v < d; ++v) labels.push_back(std::to_string(v));
  std::vector<double> p(d * d, (1.0 - eta) / static_cast<double>(d));
  for (std::uint64_t v = 0; v < d; ++v) p[v * d + v] += eta;
  return ChannelMatrix(labels, labels, std::move(p));
}

double amplified_epsilon(double eps, double eta) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
  return std::log1p(eta * std::exp(eps) * std::expm1(eps));
}

double mutual_information(const std::vector<double>& prior,
                          const ChannelMatrix& channel) {
  if (prior.size() != channel.rows()) {
    throw InvalidArgument("prior does not match channel inputs");
  }
  std::vector<double> marginal(channel.cols(), 0.0);
  for (std::size_t v = 0; v < channel.rows(); ++v) {
    for (std::size_t z = 0; z < channel.cols(); ++z) {
      marginal[z] += prior[v] * channel.at(v, z);
    }
  }
  double info = 0.0;
  for (std::size_t v = 0; v < channel.rows(); ++v) {
    if (prior[v] == 0.0) continue;
    for (std::size_t z = 0; z < channel.cols(); ++z) {
      const double p = channel.at(v, z);
      if (p == 0.0) continue;
      info += prior[v] * p * std::log(p / marginal[z]);
    }
  }
  return std::max(0.0, info);
}

}  // namespace ldphh
