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

#ifndef LDPHH_CORE_H_
#define LDPHH_CORE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace ldphh {

// An element of the universe [0, d).
using Item = std::uint64_t;

// An item or the "no item" symbol.
using MaybeItem = std::optional<Item>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

struct Universe {
  std::uint64_t d;

  explicit Universe(std::uint64_t size);
  bool contains(Item v) const { return v < d; }
};

// Protocols run with delta = 0; delta exists for auditing only.
struct PrivacyBudget {
  double epsilon;
  double delta = 0.0;

  PrivacyBudget(double eps, double del = 0.0);
};

struct FoParams {
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  double eps = 0.0;
  double beta = 0.0;
  double gamma = 0.0;       // JL distortion target
  std::uint64_t m_fo = 0;   // projection dimension

  bool operator==(const FoParams&) const = default;
};

struct HhParams {
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  double eps = 0.0;
  double beta = 0.0;
  std::uint64_t K = 0;      // channels per repetition
  std::uint32_t T = 0;      // repetitions
  std::uint32_t ell = 0;    // hash seed bits
  double eps_channel = 0.0;
  double threshold = 0.0;   // pruning cutoff
  bool k_overridden = false;
  // (1/threshold)(n/K)^T; reported only when K was overridden.
  std::optional<double> isolation_bound;

  bool operator==(const HhParams&) const = default;
};

// c_eps = (e^eps + 1) / (e^eps - 1).
double c_eps(double eps);

// Magnitude c_eps * sqrt(m) of a basic-randomizer report coordinate.
double validate_report_magnitude(double eps, std::uint64_t m);

std::uint32_t ceil_log2(std::uint64_t x);

// floor(n^{3/2}) computed in exact integer arithmetic.
std::uint64_t floor_pow_three_halves(std::uint64_t n);

FoParams derive_fo_params(std::uint64_t d, std::uint64_t n, double eps,
                          double beta);

HhParams derive_hh_params(std::uint64_t d, std::uint64_t n, double eps,
                          double beta,
                          std::optional<std::uint64_t> k_override = {});

// Plain-text key=value configuration. Blank lines and lines starting with
// '#' are ignored; keys and values are whitespace-trimmed.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }
  const std::map<std::string, std::string>& values() const { return values_; }
  std::string dump() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace ldphh

#endif  // LDPHH_CORE_H_
