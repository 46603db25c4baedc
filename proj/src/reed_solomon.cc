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

#include "ldphh/reed_solomon.h"

#include <array>

#include "ldphh/core.h"

namespace ldphh {

namespace gf256 {
namespace {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<int, 256> log{};

  Tables() {
    int x = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = static_cast<std::uint8_t>(x);
      log[x] = i;
      x <<= 1;
      if (x & 0x100) x ^= 0x11d;
    }
    for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    log[0] = -1;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  const auto& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw InvalidArgument("division by zero in GF(256)");
  if (a == 0) return 0;
  const auto& t = tables();
  return t.exp[t.log[a] + 255 - t.log[b]];
}

std::uint8_t pow_alpha(int e) {
  e %= 255;
  if (e < 0) e += 255;
  return tables().exp[e];
}

int log(std::uint8_t a) { return tables().log[a]; }

}  // namespace gf256

namespace {

// Polynomials below are stored low-to-high degree.
std::uint8_t eval_low(const std::vector<std::uint8_t>& p, std::uint8_t x) {
  std::uint8_t y = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) y = gf256::mul(y, x) ^ *it;
  return y;
}

}  // namespace

ReedSolomon::ReedSolomon(int n, int k) : n_(n), k_(k) {
  if (k < 1 || n <= k || n > 255) {
    throw InvalidArgument("Reed-Solomon parameters need 1 <= k < n <= 255");
  }
  // g(x) = prod_{i < n-k} (x - alpha^i), high-to-low.
  generator_ = {1};
  for (int i = 0; i < n - k; ++i) {
    std::vector<std::uint8_t> next(generator_.size() + 1, 0);
    const std::uint8_t root = gf256::pow_alpha(i);
    for (std::size_t j = 0; j < generator_.size(); ++j) {
      next[j] ^= generator_[j];
      next[j + 1] ^= gf256::mul(generator_[j], root);
    }
    generator_ = std::move(next);
  }
}

std::vector<std::uint8_t> ReedSolomon::encode(
    std::span<const std::uint8_t> message) const {
  if (static_cast<int>(message.size()) != k_) {
    throw InvalidArgument("Reed-Solomon message has the wrong length");
  }
  // Remainder of m(x) x^{n-k} divided by g(x), by synthetic division.
  std::vector<std::uint8_t> work(n_, 0);
  std::copy(message.begin(), message.end(), work.begin());
  for (int i = 0; i < k_; ++i) {
    const std::uint8_t coef = work[i];
    if (coef == 0) continue;
    for (std::size_t j = 1; j < generator_.size(); ++j) {
      work[i + j] ^= gf256::mul(generator_[j], coef);
    }
  }
  std::vector<std::uint8_t> out(message.begin(), message.end());
  out.insert(out.end(), work.begin() + k_, work.end());
  return out;
}

std::vector<std::uint8_t> ReedSolomon::syndromes(
    std::span<const std::uint8_t> word) const {
  std::vector<std::uint8_t> s(n_ - k_, 0);
  for (int i = 0; i < n_ - k_; ++i) {
    const std::uint8_t x = gf256::pow_alpha(i);
    std::uint8_t y = 0;
    for (auto c : word) y = gf256::mul(y, x) ^ c;
    s[i] = y;
  }
  return s;
}

std::optional<std::vector<std::uint8_t>> ReedSolomon::decode(
    std::span<const std::uint8_t> received) const {
  if (static_cast<int>(received.size()) != n_) {
    throw InvalidArgument("Reed-Solomon word has the wrong length");
  }
  const auto synd = syndromes(received);
  bool clean = true;
  for (auto s : synd) clean = clean && s == 0;
  if (clean) {
    return std::vector<std::uint8_t>(received.begin(), received.begin() + k_);
  }

  // Berlekamp-Massey: error locator lambda, low-to-high.
  const int two_t = n_ - k_;
  std::vector<std::uint8_t> lambda = {1};
  std::vector<std::uint8_t> prev = {1};
  int len = 0;
  int shift = 1;
  std::uint8_t prev_disc = 1;
  for (int r = 0; r < two_t; ++r) {
    std::uint8_t disc = synd[r];
    for (int i = 1; i <= len && i < static_cast<int>(lambda.size()); ++i) {
      disc ^= gf256::mul(lambda[i], synd[r - i]);
    }
    if (disc == 0) {
      ++shift;
      continue;
    }
    const std::uint8_t scale = gf256::div(disc, prev_disc);
    std::vector<std::uint8_t> updated = lambda;
    if (updated.size() < prev.size() + shift) updated.resize(prev.size() + shift, 0);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      updated[i + shift] ^= gf256::mul(scale, prev[i]);
    }
    if (2 * len <= r) {
      prev = lambda;
      len = r + 1 - len;
      prev_disc = disc;
      shift = 1;
    } else {
      ++shift;
    }
    lambda = std::move(updated);
  }
  while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
  const int degree = static_cast<int>(lambda.size()) - 1;
  if (degree != len || degree > correctable()) return std::nullopt;

  // Chien search: position p (coefficient of x^p) is in error when
  // lambda(alpha^{-p}) == 0.
  std::vector<int> error_powers;
  for (int p = 0; p < n_; ++p) {
    if (eval_low(lambda, gf256::pow_alpha(-p)) == 0) error_powers.push_back(p);
  }
  if (static_cast<int>(error_powers.size()) != degree) return std::nullopt;

  // Forney with first consecutive root alpha^0:
  // e = X * omega(X^{-1}) / lambda'(X^{-1}).
  std::vector<std::uint8_t> omega(two_t, 0);
  for (int i = 0; i < two_t; ++i) {
    for (int j = 0; j <= i && j < static_cast<int>(lambda.size()); ++j) {
      omega[i] ^= gf256::mul(synd[i - j], lambda[j]);
    }
  }
  std::vector<std::uint8_t> deriv(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
  for (std::size_t i = 1; i < lambda.size(); i += 2) deriv[i - 1] = lambda[i];

  std::vector<std::uint8_t> corrected(received.begin(), received.end());
  for (int p : error_powers) {
    const std::uint8_t x = gf256::pow_alpha(p);
    const std::uint8_t x_inv = gf256::pow_alpha(-p);
    const std::uint8_t denom = eval_low(deriv, x_inv);
    if (denom == 0) return std::nullopt;
    const std::uint8_t mag = gf256::mul(x, gf256::div(eval_low(omega, x_inv), denom));
    corrected[n_ - 1 - p] ^= mag;
  }
  for (auto s : syndromes(corrected)) {
    if (s != 0) return std::nullopt;
  }
  return std::vector<std::uint8_t>(corrected.begin(), corrected.begin() + k_);
}

}  // namespace ldphh
