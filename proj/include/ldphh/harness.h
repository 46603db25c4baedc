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

#ifndef LDPHH_HARNESS_H_
#define LDPHH_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldphh/codec.h"
#include "ldphh/core.h"
#include "ldphh/dataset.h"
#include "ldphh/heavy_hitter.h"

namespace ldphh {

enum class Protocol { kFo, kPp, kHist, kHistOneBit, kFoOneBit };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string& s);

inline constexpr const char* kCsvSchema = "ldphh-histogram-v1";
inline constexpr const char* kManifestSchema = "ldphh-manifest-v1";
inline constexpr const char* kSweepCsvSchema = "ldphh-sweep-v1";

struct ExperimentConfig {
  Protocol protocol = Protocol::kHist;
  DatasetSpec dataset;  // d, n and seed are overwritten from the fields below
  std::uint64_t d = 1024;
  std::uint64_t n = 10000;
  double eps = 1.0;
  double beta = 0.1;
  std::optional<std::uint64_t> k_override;
  RunMode mode = RunMode::kFast;
  CodeKind code = CodeKind::kConcatenated;
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  bool transport = false;  // route reports through a loopback TCP session
  std::vector<Item> probes;

  // When non-empty, run_experiment writes the CSV here and the manifest next
  // to it with the extension replaced by ".json".
  std::string out_csv;

  void validate() const;
  DatasetSpec dataset_spec() const;
};

struct ItemError {
  Item item = 0;
  double truth = 0.0;
  double estimate = 0.0;
  double error = 0.0;
};

struct MetricsRecord {
  ExperimentConfig config;
  std::optional<FoParams> fo_params;
  std::optional<HhParams> hh_params;
  std::uint64_t m_pp = 0;

  double linf_error = 0.0;
  std::vector<ItemError> item_errors;  // sorted by item

  // Heavy-hitter quality at the pruning threshold (histogram protocols).
  std::optional<double> precision;
  std::optional<double> recall;
  std::uint64_t false_positives_below_half_threshold = 0;

  // Promise protocol outcome.
  MaybeItem pp_item;
  double pp_f_hat = 0.0;

  std::uint64_t reported = 0;
  std::uint64_t decode_failures = 0;
  std::uint64_t onebit_accepted = 0;
  std::uint64_t dataset_checksum = 0;
  std::uint64_t input_checksum = 0;
  double runtime_sec = 0.0;

  SuccinctHistogram output;      // for FO protocols, every item's raw estimate
  std::vector<ProbeRecord> probes;
  std::string csv;               // exact bytes of the CSV artifact

  std::string manifest_json() const;
};

// Runs the configured protocol on gen_dataset(config.dataset_spec()) with
// public coins Prf::from_seed(seed) and private coins from its "private"
// child, then computes metrics against the generator truth.
MetricsRecord run_experiment(const ExperimentConfig& config);

// Same on an explicit input.
MetricsRecord run_experiment(const ExperimentConfig& config,
                             const std::vector<MaybeItem>& items);

void write_artifacts(const MetricsRecord& record, const std::string& csv_path);

// Seed of trial `trial` at population n, derived from a master seed.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t n);

struct SweepConfig {
  ExperimentConfig base;
  std::vector<std::uint64_t> n_values;
  std::uint64_t trials = 20;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::string out_csv;
};

struct SweepPoint {
  std::uint64_t n = 0;
  std::vector<double> errors;  // by trial
  double median = 0.0;
};

struct SweepResult {
  std::vector<MetricsRecord> records;  // ordered by (n, trial)
  std::vector<SweepPoint> points;      // ordered as n_values
  std::string csv;

  // median(n_values[i]) / median(n_values[i + 1]).
  std::vector<double> median_ratios() const;
  std::string manifest_json(const SweepConfig& config) const;
};

SweepResult run_sweep(const SweepConfig& config);

double median(std::vector<double> values);

// Parses "item,estimated_frequency[,...]" CSV text.
SuccinctHistogram parse_histogram_csv(const std::string& csv);

// Error bound sqrt(ln(2d/beta) / (eps^2 n)) scaled by `constant`.
double fo_error_bound(std::uint64_t d, std::uint64_t n, double eps, double beta,
                      double constant);

}  // namespace ldphh

#endif  // LDPHH_HARNESS_H_
