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

#include "ldphh/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "ldphh/prf.h"

namespace ldphh {

namespace {

std::vector<double> zipf_cdf(std::uint64_t d, double s) {
  std::vector<double> cdf(d);
  double acc = 0.0;
  for (std::uint64_t r = 1; r <= d; ++r) {
    acc += std::pow(static_cast<double>(r), -s);
    cdf[r - 1] = acc;
  }
  for (auto& c : cdf) c /= acc;
  return cdf;
}

Item uniform_other(Rng& rng, std::uint64_t d, const std::unordered_set<Item>& excluded) {
  for (;;) {
    const Item v = rng.uniform(d);
    if (!excluded.count(v)) return v;
  }
}

std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

}  // namespace

void DatasetSpec::validate() const {
  if (d < 2) throw InvalidArgument("universe must have at least 2 items");
  if (n < 1) throw InvalidArgument("dataset needs at least one user");
  switch (kind) {
    case DatasetKind::kUniform:
      break;
    case DatasetKind::kZipf:
      if (!(zipf_s > 0.0)) throw InvalidArgument("zipf exponent must be positive");
      break;
    case DatasetKind::kPlanted: {
      double total = 0.0;
      std::unordered_set<Item> seen;
      for (const auto& [v, f] : planted) {
        if (v >= d) throw InvalidArgument("planted item outside the universe");
        if (!(f >= 0.0)) throw InvalidArgument("planted frequency must be non-negative");
        if (!seen.insert(v).second) throw InvalidArgument("planted item listed twice");
        total += f;
      }
      if (total > 1.0 + 1e-12) throw InvalidArgument("planted frequencies sum above 1");
      if (seen.size() >= d && total < 1.0 - 1e-12) {
        throw InvalidArgument("no items left for the remainder");
      }
      break;
    }
    case DatasetKind::kPromise:
      if (!(promise_eta >= 0.0 && promise_eta <= 1.0)) {
        throw InvalidArgument("promise eta must be in [0, 1]");
      }
      if (promise_item >= d) throw InvalidArgument("promise item outside the universe");
      break;
  }
}

std::string DatasetSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case DatasetKind::kUniform:
      out << "uniform";
      break;
    case DatasetKind::kZipf:
      out << "zipf:" << shortest(zipf_s);
      break;
    case DatasetKind::kPlanted:
      out << "planted:";
      for (std::size_t i = 0; i < planted.size(); ++i) {
        if (i) out << ',';
        out << planted[i].first << '=' << shortest(planted[i].second);
      }
      break;
    case DatasetKind::kPromise:
      out << "promise:" << shortest(promise_eta) << '@' << promise_item;
      break;
  }
  return out.str();
}

DatasetSpec DatasetSpec::parse(const std::string& text, std::uint64_t d, std::uint64_t n,
                               std::uint64_t seed) {
  DatasetSpec spec;
  spec.d = d;
  spec.n = n;
  spec.seed = seed;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "uniform") {
      spec.kind = DatasetKind::kUniform;
    } else if (head == "zipf") {
      spec.kind = DatasetKind::kZipf;
      if (!rest.empty()) spec.zipf_s = std::stod(rest);
    } else if (head == "planted") {
      spec.kind = DatasetKind::kPlanted;
      std::stringstream ss(rest);
      std::string part;
      while (std::getline(ss, part, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw InvalidArgument("expected item=frequency");
        spec.planted.emplace_back(std::stoull(part.substr(0, eq)),
                                  std::stod(part.substr(eq + 1)));
      }
    } else if (head == "promise") {
      spec.kind = DatasetKind::kPromise;
      const auto at = rest.find('@');
      if (at == std::string::npos) throw InvalidArgument("expected eta@item");
      spec.promise_eta = std::stod(rest.substr(0, at));
      spec.promise_item = std::stoull(rest.substr(at + 1));
    } else {
      throw InvalidArgument("unknown dataset kind");
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("cannot parse dataset spec '" + text + "'");
  }
  spec.validate();
  return spec;
}

std::vector<MaybeItem> gen_dataset(const DatasetSpec& spec) {
  spec.validate();
  Rng rng(Prf::from_seed(spec.seed),
          {StreamTag::kDataset, static_cast<std::uint64_t>(spec.kind), spec.n});
  std::vector<MaybeItem> items;
  items.reserve(spec.n);
  switch (spec.kind) {
    case DatasetKind::kUniform:
      for (std::uint64_t i = 0; i < spec.n; ++i) items.emplace_back(rng.uniform(spec.d));
      break;
    case DatasetKind::kZipf: {
      const auto cdf = zipf_cdf(spec.d, spec.zipf_s);
      for (std::uint64_t i = 0; i < spec.n; ++i) {
        const double u = rng.unit();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        items.emplace_back(std::min<std::uint64_t>(it - cdf.begin(), spec.d - 1));
      }
      break;
    }
    case DatasetKind::kPlanted: {
      std::unordered_set<Item> planted;
      for (const auto& [v, f] : spec.planted) {
        const auto count = static_cast<std::uint64_t>(std::llround(f * spec.n));
        for (std::uint64_t c = 0; c < count && items.size() < spec.n; ++c) items.emplace_back(v);
        planted.insert(v);
      }
      while (items.size() < spec.n) items.emplace_back(uniform_other(rng, spec.d, planted));
      break;
    }
    case DatasetKind::kPromise: {
      // The small slack keeps products such as 0.3 * 10 from rounding up.
      const double exact = spec.promise_eta * static_cast<double>(spec.n);
      const auto holders = static_cast<std::uint64_t>(std::ceil(exact - 1e-9));
      for (std::uint64_t i = 0; i < spec.n; ++i) {
        items.push_back(i < holders ? MaybeItem(spec.promise_item) : std::nullopt);
      }
      break;
    }
  }
  for (std::uint64_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.uniform(i)]);
  }
  return items;
}

FrequencyMap truth_of(const std::vector<MaybeItem>& items) {
  FrequencyMap counts;
  for (const auto& v : items) {
    if (v) counts[*v] += 1.0;
  }
  const double n = static_cast<double>(items.size());
  for (auto& [v, c] : counts) c /= n;
  return counts;
}

double zipf_mass(std::uint64_t d, double s, std::uint64_t rank) {
  if (rank < 1 || rank > d) throw InvalidArgument("rank out of range");
  double total = 0.0;
  for (std::uint64_t r = 1; r <= d; ++r) total += std::pow(static_cast<double>(r), -s);
  return std::pow(static_cast<double>(rank), -s) / total;
}

double linf_error(const FrequencyMap& truth, const SuccinctHistogram& estimate) {
  double worst = 0.0;
  for (const auto& [v, f] : truth) worst = std::max(worst, std::abs(estimate.estimate(v) - f));
  for (const auto& e : estimate.entries) {
    const auto it = truth.find(e.item);
    worst = std::max(worst, std::abs(e.frequency - (it == truth.end() ? 0.0 : it->second)));
  }
  return worst;
}

double linf_error(const FrequencyMap& truth, const std::vector<double>& estimate) {
  double worst = 0.0;
  for (Item v = 0; v < estimate.size(); ++v) {
    const auto it = truth.find(v);
    worst = std::max(worst, std::abs(estimate[v] - (it == truth.end() ? 0.0 : it->second)));
  }
  for (const auto& [v, f] : truth) {
    if (v >= estimate.size()) worst = std::max(worst, f);
  }
  return worst;
}

std::uint64_t multiset_checksum(const std::vector<MaybeItem>& items) {
  // Sum of a 64-bit mix of each element; addition makes it order-free.
  std::uint64_t sum = 0;
  for (const auto& v : items) {
    std::uint64_t x = v ? *v + 1 : 0;
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    sum += x ^ (x >> 31);
  }
  return sum;
}

}  // namespace ldphh
