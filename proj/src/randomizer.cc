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

#include "ldphh/randomizer.h"

#include "ldphh/core.h"

namespace ldphh {

RandomizerInput RandomizerInput::zero(std::uint64_t m) {
  if (m == 0) throw InvalidArgument("randomizer dimension must be positive");
  return RandomizerInput(m, std::nullopt);
}

RandomizerInput RandomizerInput::of(Codeword x) {
  if (x.m() == 0) throw InvalidArgument("randomizer dimension must be positive");
  const auto m = x.m();
  return RandomizerInput(m, std::move(x));
}

SparseReport randomize(const RandomizerInput& x, double eps, Rng& rng) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  return randomize_with(x.m(), eps, rng,
                        [&x](std::uint64_t j) { return x.sign_at(j); });
}

std::vector<double> report_vector(const SparseReport& r, double eps,
                                  std::uint64_t m) {
  if (r.position >= m) throw InvalidArgument("report position out of range");
  std::vector<double> z(m, 0.0);
  z[r.position] = r.sign * validate_report_magnitude(eps, m);
  return z;
}

std::vector<double> report_distribution(const RandomizerInput& x, double eps,
                                        std::uint64_t cap) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const std::uint64_t m = x.m();
  if (2 * m > cap) {
    throw InvalidArgument("report distribution has " + std::to_string(2 * m) +
                          " outcomes, above the enumeration cap " +
                          std::to_string(cap));
  }
  std::vector<double> dist(2 * m);
  const double inv_m = 1.0 / static_cast<double>(m);
  const double keep = keep_probability(eps);
  const double flip = 1.0 / (1.0 + std::exp(eps));
  for (std::uint64_t j = 0; j < m; ++j) {
    const int s = x.sign_at(j);
    if (s == 0) {
      dist[2 * j] = dist[2 * j + 1] = 0.5 * inv_m;
    } else {
      dist[2 * j] = (s > 0 ? keep : flip) * inv_m;
      dist[2 * j + 1] = (s > 0 ? flip : keep) * inv_m;
    }
  }
  return dist;
}

std::vector<double> expected_report_vector(const std::vector<double>& dist,
                                           double eps) {
  if (dist.size() % 2 != 0 || dist.empty()) {
    throw InvalidArgument("distribution must have 2m outcomes");
  }
  const std::uint64_t m = dist.size() / 2;
  const double mag = validate_report_magnitude(eps, m);
  std::vector<double> e(m);
  for (std::uint64_t j = 0; j < m; ++j) e[j] = mag * (dist[2 * j] - dist[2 * j + 1]);
  return e;
}

}  // namespace ldphh
