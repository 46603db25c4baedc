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

#ifndef LDPHH_DATASET_H_
#define LDPHH_DATASET_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ldphh/core.h"
#include "ldphh/heavy_hitter.h"

namespace ldphh {

enum class DatasetKind { kUniform, kZipf, kPlanted, kPromise };

struct DatasetSpec {
  DatasetKind kind = DatasetKind::kUniform;
  std::uint64_t d = 2;
  std::uint64_t n = 1;
  std::uint64_t seed = 0;
  double zipf_s = 1.1;
  std::vector<std::pair<Item, double>> planted;
  double promise_eta = 1.0;
  Item promise_item = 0;

  void validate() const;

  // Compact textual form: "uniform", "zipf:1.1", "planted:5=0.3,9=0.2",
  // "promise:0.2@9".
  std::string describe() const;
  static DatasetSpec parse(const std::string& text, std::uint64_t d, std::uint64_t n,
                           std::uint64_t seed);
};

// Deterministic in the description. Planted items get exactly llround(f n) users and
// the rest draw uniformly from the other items; promise datasets give
// ceil(eta n) users the item and no item to the others. Users are shuffled.
std::vector<MaybeItem> gen_dataset(const DatasetSpec& spec);

using FrequencyMap = std::unordered_map<Item, double>;

// Empirical frequencies count(v) / |items|; users without an item count in
// the denominator only.
FrequencyMap truth_of(const std::vector<MaybeItem>& items);

// Exact normalized Zipf mass of rank r (1-based) over d ranks.
double zipf_mass(std::uint64_t d, double s, std::uint64_t rank);

// max over all items of |estimate(v) - truth(v)|, unlisted estimates being 0.
double linf_error(const FrequencyMap& truth, const SuccinctHistogram& estimate);

// Same for a dense estimate vector over items 0..d-1.
double linf_error(const FrequencyMap& truth, const std::vector<double>& estimate);

// Order-independent checksum of a multiset of items.
std::uint64_t multiset_checksum(const std::vector<MaybeItem>& items);

}  // namespace ldphh

#endif  // LDPHH_DATASET_H_
