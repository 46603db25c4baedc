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

#include "ldphh/core.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ldphh {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void check_common(std::uint64_t d, std::uint64_t n, double eps, double beta) {
  require(d >= 2, "universe size d must be at least 2");
  require(n >= 1, "user count n must be positive");
  require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Universe::Universe(std::uint64_t size) : d(size) {
  require(d >= 2, "universe size d must be at least 2");
}

PrivacyBudget::PrivacyBudget(double eps, double del)
    : epsilon(eps), delta(del) {
  require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  require(del >= 0.0 && del < 1.0, "delta must lie in [0, 1)");
}

double c_eps(double eps) {
  require(eps > 0.0, "eps must be positive");
  // expm1 keeps precision for small eps.
  const double em1 = std::expm1(eps);
  return (em1 + 2.0) / em1;
}

double validate_report_magnitude(double eps, std::uint64_t m) {
  require(m >= 1, "dimension m must be positive");
  return c_eps(eps) * std::sqrt(static_cast<double>(m));
}

std::uint32_t ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return 64u - static_cast<std::uint32_t>(__builtin_clzll(x - 1));
}

std::uint64_t floor_pow_three_halves(std::uint64_t n) {
  // Floating estimate of sqrt(n^3), then corrected in 128-bit integers.
  using u128 = unsigned __int128;
  const u128 cube = static_cast<u128>(n) * n * n;
  if (cube == 0) return 0;
  u128 x = static_cast<u128>(std::sqrt(static_cast<long double>(cube)));
  if (x == 0) x = 1;
  while (x * x > cube) --x;
  while ((x + 1) * (x + 1) <= cube) ++x;
  require(x <= static_cast<u128>(UINT64_MAX), "n^{3/2} overflows 64 bits");
  return static_cast<std::uint64_t>(x);
}

FoParams derive_fo_params(std::uint64_t d, std::uint64_t n, double eps,
                          double beta) {
  check_common(d, n, eps, beta);
  FoParams p;
  p.d = d;
  p.n = n;
  p.eps = eps;
  p.beta = beta;
  const double dd = static_cast<double>(d);
  p.gamma = std::sqrt(std::log(2.0 * dd / beta) /
                      (eps * eps * static_cast<double>(n)));
  const double m =
      std::ceil(std::log(dd + 1.0) * std::log(2.0 / beta) / (p.gamma * p.gamma));
  require(m < 4.0e9, "projection dimension exceeds 32-bit positions");
  p.m_fo = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m));
  return p;
}

HhParams derive_hh_params(std::uint64_t d, std::uint64_t n, double eps,
                          double beta, std::optional<std::uint64_t> k_override) {
  check_common(d, n, eps, beta);
  HhParams p;
  p.d = d;
  p.n = n;
  p.eps = eps;
  p.beta = beta;
  if (k_override) {
    require(*k_override >= 2, "K override must be at least 2");
    p.K = *k_override;
    p.k_overridden = true;
  } else {
    p.K = floor_pow_three_halves(n);
  }
  const double t = std::ceil(std::log2(3.0 / beta));
  p.T = static_cast<std::uint32_t>(std::max(1.0, t));
  p.ell = 2 * std::max(ceil_log2(d), ceil_log2(n));
  p.eps_channel = eps / static_cast<double>(2 * p.T + 1);
  p.threshold = (static_cast<double>(2 * p.T + 1) / eps) *
                std::sqrt(std::log(static_cast<double>(d)) *
                          std::log(1.0 / beta) / static_cast<double>(n));
  if (p.threshold >= 1.0) {
    std::ostringstream msg;
    msg << "pruning threshold " << p.threshold
        << " >= 1: protocol is vacuous for d=" << d << ", n=" << n
        << ", eps=" << eps << ", beta=" << beta << " (increase n or eps)";
    throw InvalidArgument(msg.str());
  }
  if (p.k_overridden) {
    const double ratio =
        static_cast<double>(n) / static_cast<double>(p.K);
    p.isolation_bound = std::pow(ratio, p.T) / p.threshold;
  }
  return p;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": empty key");
    }
    cfg.values_[key] = trim(t.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    const double x = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument(key);
    return x;
  } catch (const std::exception&) {
    throw InvalidArgument("config key '" + key + "' is not a number: " + *v);
  }
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    // Accept scientific forms like 1e5 for convenience.
    if (v->find_first_of("eE.") != std::string::npos) {
      const double x = std::stod(*v, &pos);
      if (pos != v->size() || x < 0 || x != std::floor(x)) {
        throw std::invalid_argument(key);
      }
      return static_cast<std::uint64_t>(x);
    }
    const auto x = std::stoull(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument(key);
    return x;
  } catch (const std::exception&) {
    throw InvalidArgument("config key '" + key +
                          "' is not a non-negative integer: " + *v);
  }
}

std::string KeyValueConfig::dump() const {
  std::ostringstream out;
  for (const auto& [k, v] : values_) out << k << '=' << v << '\n';
  return out.str();
}

}  // namespace ldphh
