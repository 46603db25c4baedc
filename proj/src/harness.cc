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

#include "ldphh/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ldphh/freq_oracle.h"
#include "ldphh/onebit.h"
#include "ldphh/prf.h"
#include "ldphh/transport.h"

namespace ldphh {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kTransportBatch = 4096;
constexpr std::size_t kFoErrorItems = 10;

SessionConfig session_config(const ExperimentConfig& c) {
  SessionConfig s;
  switch (c.protocol) {
    case Protocol::kFo:
      s.kind = SessionKind::kFo;
      break;
    case Protocol::kFoOneBit:
      s.kind = SessionKind::kFoOneBit;
      break;
    case Protocol::kHist:
      s.kind = SessionKind::kHist;
      break;
    case Protocol::kHistOneBit:
      s.kind = SessionKind::kHistOneBit;
      break;
    case Protocol::kPp:
      throw InvalidArgument("the promise protocol has no transport session");
  }
  s.d = c.d;
  s.n = c.n;
  s.eps = c.eps;
  s.beta = c.beta;
  s.k_override = c.k_override.value_or(0);
  s.master_seed = c.seed;
  s.code = c.code;
  s.run = c.run;
  return s;
}

// Streams every user's frames through a loopback session and returns the
// result CSV.
std::string run_over_transport(const ExperimentConfig& config, const Prf& priv,
                               const std::vector<MaybeItem>& items) {
  const SessionConfig sc = session_config(config);
  const ClientEncoder encoder(sc, priv);
  const std::uint64_t n = items.size();
  AggregationSession session(sc);
  AggregationServer server(session, "127.0.0.1", 0);
  std::thread serving([&server] { server.run(); });
  try {
    std::string csv;
    {
      AggregationClient client("127.0.0.1", server.port());
      std::vector<wire::Frame> batch;
      for (std::uint64_t i = 0; i < n; ++i) {
        encoder.frames(i, items[i], batch);
        if (batch.size() >= kTransportBatch || i + 1 == n) {
          const auto summary = client.submit(batch);
          if (summary.duplicates) throw Error("transport run produced duplicate reports");
          batch.clear();
        }
      }
      csv = client.close_session();
    }
    serving.join();
    return csv;
  } catch (...) {
    server.stop();
    serving.join();
    throw;
  }
}

SuccinctHistogram dense_histogram(const std::vector<double>& estimates) {
  SuccinctHistogram h;
  h.entries.reserve(estimates.size());
  for (Item v = 0; v < estimates.size(); ++v) h.entries.push_back({v, estimates[v]});
  return h;
}

json fo_params_json(const FoParams& p) {
  return {{"d", p.d}, {"n", p.n}, {"eps", p.eps}, {"beta", p.beta},
          {"gamma", p.gamma}, {"m_fo", p.m_fo}};
}

json hh_params_json(const HhParams& p) {
  json j = {{"d", p.d},
            {"n", p.n},
            {"eps", p.eps},
            {"beta", p.beta},
            {"K", p.K},
            {"T", p.T},
            {"ell", p.ell},
            {"eps_channel", p.eps_channel},
            {"threshold", p.threshold},
            {"k_overridden", p.k_overridden}};
  j["isolation_bound"] = p.isolation_bound ? json(*p.isolation_bound) : json(nullptr);
  return j;
}

json config_json(const ExperimentConfig& c) {
  json j = {{"protocol", to_string(c.protocol)},
            {"dataset", c.dataset_spec().describe()},
            {"d", c.d},
            {"n", c.n},
            {"eps", c.eps},
            {"beta", c.beta}};
  j["k_override"] = c.k_override ? json(*c.k_override) : json(nullptr);
  j["mode"] = to_string(c.mode);
  j["code"] = to_string(c.code);
  j["seed"] = c.seed;
  j["run"] = c.run;
  j["transport"] = c.transport;
  j["one_bit"] = c.protocol == Protocol::kHistOneBit || c.protocol == Protocol::kFoOneBit;
  j["probes"] = c.probes;
  return j;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<ItemError> collect_errors(const FrequencyMap& truth, const SuccinctHistogram& est,
                                      std::set<Item> items) {
  std::vector<ItemError> out;
  for (Item v : items) {
    const auto it = truth.find(v);
    const double f = it == truth.end() ? 0.0 : it->second;
    const double e = est.estimate(v);
    out.push_back({v, f, e, std::abs(e - f)});
  }
  return out;
}

}  // namespace

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::kFo:
      return "fo";
    case Protocol::kPp:
      return "pp";
    case Protocol::kHist:
      return "hist";
    case Protocol::kHistOneBit:
      return "hist-onebit";
    case Protocol::kFoOneBit:
      return "fo-onebit";
  }
  return "?";
}

Protocol parse_protocol(const std::string& s) {
  for (Protocol p : {Protocol::kFo, Protocol::kPp, Protocol::kHist, Protocol::kHistOneBit,
                     Protocol::kFoOneBit}) {
    if (to_string(p) == s) return p;
  }
  throw InvalidArgument("unknown protocol '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (d < 2) throw InvalidArgument("d must be at least 2");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must be in (0, 1)");
  if (k_override && *k_override == 0) throw InvalidArgument("K override must be positive");
  if (transport && protocol == Protocol::kPp) {
    throw InvalidArgument("the promise protocol has no transport session");
  }
  if (transport && mode != RunMode::kFaithful) {
    throw InvalidArgument("transport runs require faithful mode");
  }
  for (Item v : probes) {
    if (v >= d) throw InvalidArgument("probe item outside the universe");
  }
  dataset_spec().validate();
}

DatasetSpec ExperimentConfig::dataset_spec() const {
  DatasetSpec s = dataset;
  s.d = d;
  s.n = n;
  s.seed = seed;
  return s;
}

MetricsRecord run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, gen_dataset(config.dataset_spec()));
}

MetricsRecord run_experiment(const ExperimentConfig& config,
                             const std::vector<MaybeItem>& items) {
  config.validate();
  if (items.size() != config.n) throw InvalidArgument("input size differs from n");
  for (const auto& v : items) {
    if (v && *v >= config.d) throw InvalidArgument("input item outside the universe");
  }
  const auto start = std::chrono::steady_clock::now();

  MetricsRecord rec;
  rec.config = config;
  rec.dataset_checksum = multiset_checksum(items);
  const FrequencyMap truth = truth_of(items);
  const PublicRandomness pub = Prf::from_seed(config.seed);
  const Prf priv = pub.child("private");
  const std::uint64_t n = config.n;
  std::set<Item> error_items(config.probes.begin(), config.probes.end());

  switch (config.protocol) {
    case Protocol::kFo: {
      const FoParams fp = derive_fo_params(config.d, n, config.eps, config.beta);
      rec.fo_params = fp;
      std::vector<double> est;
      if (config.transport) {
        const std::string csv = run_over_transport(config, priv, items);
        est.assign(config.d, 0.0);
        for (const auto& e : parse_histogram_csv(csv).entries) est.at(e.item) = e.frequency;
      } else {
        FrequencyOracle oracle(pub, fp.m_fo, config.eps);
        for (std::uint64_t i = 0; i < n; ++i) {
          Rng rng = user_rng(priv, i, config.run);
          oracle.absorb(fo_user_report(items[i], fp.m_fo, pub, config.eps, rng));
        }
        est = oracle.estimate_all(config.d);
      }
      rec.linf_error = linf_error(truth, est);
      rec.output = dense_histogram(est);
      rec.reported = config.d;
      break;
    }
    case Protocol::kFoOneBit: {
      const FoParams fp = derive_fo_params(config.d, n, config.eps, config.beta);
      rec.fo_params = fp;
      const auto s = OneBitStructure::fo_only(pub, fp.m_fo, config.eps);
      std::vector<double> est;
      if (config.transport) {
        const std::string csv = run_over_transport(config, priv, items);
        est.assign(config.d, 0.0);
        for (const auto& e : parse_histogram_csv(csv).entries) est.at(e.item) = e.frequency;
      } else {
        auto res = onebit_fo_run(items, s, priv, config.run);
        rec.onebit_accepted = res.accepted;
        FrequencyOracle oracle(pub, fp.m_fo, config.eps);
        oracle.mutable_state() = std::move(res.state);
        est = oracle.estimate_all(config.d);
      }
      rec.linf_error = linf_error(truth, est);
      rec.output = dense_histogram(est);
      rec.reported = config.d;
      break;
    }
    case Protocol::kPp: {
      const auto code = build_code(config.d, config.code);
      rec.m_pp = code->m();
      AggregateState agg(code->m(), config.eps);
      for (std::uint64_t i = 0; i < n; ++i) {
        Rng rng = user_rng(priv, i, config.run);
        agg.absorb(pp_client_report(items[i], *code, config.eps, rng));
      }
      const PpDecode dec = pp_decode(agg, *code);
      rec.pp_item = dec.item;
      rec.pp_f_hat = dec.f_hat;
      if (dec.item) {
        rec.output.entries.push_back({*dec.item, std::clamp(dec.f_hat, 0.0, 1.0)});
        error_items.insert(*dec.item);
      } else {
        ++rec.decode_failures;
      }
      for (const auto& [v, f] : truth) error_items.insert(v);
      rec.linf_error = linf_error(truth, rec.output);
      rec.reported = rec.output.size();
      break;
    }
    case Protocol::kHist:
    case Protocol::kHistOneBit: {
      const HhParams hp = derive_hh_params(config.d, n, config.eps, config.beta, config.k_override);
      const HhStructure s = HhStructure::make(hp, config.code, pub);
      rec.hh_params = hp;
      rec.fo_params = s.fo_params();
      rec.m_pp = s.m_pp();
      const bool one_bit = config.protocol == Protocol::kHistOneBit;
      if (config.transport) {
        rec.output = parse_histogram_csv(run_over_transport(config, priv, items));
      } else {
        HhRunOptions opts;
        opts.mode = config.mode;
        opts.run = config.run;
        opts.probes = config.probes;
        HhRunResult res;
        if (one_bit) {
          auto ob = onebit_hh_run(items, s, priv, opts);
          rec.onebit_accepted = ob.accepted;
          res = std::move(ob.result);
        } else {
          res = hh_run(items, s, priv, opts);
        }
        rec.output = std::move(res.histogram);
        rec.decode_failures = res.decode_failures;
        rec.probes = std::move(res.probes);
      }
      rec.linf_error = linf_error(truth, rec.output);
      rec.reported = rec.output.size();

      std::uint64_t heavy = 0, hit = 0;
      for (const auto& [v, f] : truth) {
        if (f >= hp.threshold) {
          ++heavy;
          error_items.insert(v);
          if (rec.output.contains(v)) ++hit;
        }
      }
      std::uint64_t correct = 0;
      for (const auto& e : rec.output.entries) {
        error_items.insert(e.item);
        const auto it = truth.find(e.item);
        const double f = it == truth.end() ? 0.0 : it->second;
        if (f >= hp.threshold) ++correct;
        if (f < hp.threshold / 2) ++rec.false_positives_below_half_threshold;
      }
      rec.precision = rec.output.size() ? static_cast<double>(correct) / rec.output.size() : 1.0;
      rec.recall = heavy ? static_cast<double>(hit) / heavy : 1.0;
      break;
    }
  }

  if (rec.config.protocol == Protocol::kFo || rec.config.protocol == Protocol::kFoOneBit) {
    std::vector<std::pair<double, Item>> by_truth;
    for (const auto& [v, f] : truth) by_truth.emplace_back(-f, v);
    std::sort(by_truth.begin(), by_truth.end());
    for (std::size_t i = 0; i < by_truth.size() && i < kFoErrorItems; ++i) {
      error_items.insert(by_truth[i].second);
    }
    Item worst = 0;
    double worst_err = -1.0;
    for (const auto& e : rec.output.entries) {
      const auto it = truth.find(e.item);
      const double err = std::abs(e.frequency - (it == truth.end() ? 0.0 : it->second));
      if (err > worst_err) {
        worst_err = err;
        worst = e.item;
      }
    }
    error_items.insert(worst);
  }
  rec.item_errors = collect_errors(truth, rec.output, std::move(error_items));
  rec.input_checksum = multiset_checksum(items);
  rec.csv = histogram_csv(rec.output, &truth);
  rec.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!config.out_csv.empty()) write_artifacts(rec, config.out_csv);
  return rec;
}

std::string MetricsRecord::manifest_json() const {
  json j;
  j["schema"] = kManifestSchema;
  j["csv_schema"] = kCsvSchema;
  j["config"] = config_json(config);
  json derived = json::object();
  if (fo_params) derived["fo"] = fo_params_json(*fo_params);
  if (hh_params) derived["hh"] = hh_params_json(*hh_params);
  if (m_pp) derived["m_pp"] = m_pp;
  j["derived"] = derived;
  json m;
  m["linf_error"] = linf_error;
  m["precision"] = optional_json(precision);
  m["recall"] = optional_json(recall);
  m["false_positives_below_half_threshold"] = false_positives_below_half_threshold;
  if (config.protocol == Protocol::kPp) {
    m["pp_item"] = pp_item ? json(*pp_item) : json(nullptr);
    m["pp_f_hat"] = pp_f_hat;
  }
  m["reported"] = reported;
  m["decode_failures"] = decode_failures;
  m["onebit_accepted"] = onebit_accepted;
  json errs = json::array();
  for (const auto& e : item_errors) {
    errs.push_back({{"item", e.item}, {"truth", e.truth}, {"estimate", e.estimate},
                    {"error", e.error}});
  }
  m["item_errors"] = errs;
  json pr = json::array();
  for (const auto& p : probes) {
    pr.push_back({{"item", p.item},
                  {"pp_f_hat", p.pp_f_hat},
                  {"pp_recovered", p.pp_recovered},
                  {"fo_estimate", p.fo_estimate},
                  {"final_estimate", p.final_estimate}});
  }
  m["probes"] = pr;
  j["metrics"] = m;
  j["checksums"] = {{"dataset", dataset_checksum}, {"input", input_checksum}};
  j["trials"] = 1;
  j["runtime_sec"] = runtime_sec;
  return j.dump(2) + "\n";
}

void write_artifacts(const MetricsRecord& record, const std::string& csv_path) {
  std::filesystem::path path(csv_path);
  write_file(path, record.csv);
  write_file(std::filesystem::path(path).replace_extension(".json"), record.manifest_json());
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t n) {
  return Prf::from_seed(master).word({StreamTag::kTrial, trial, n}, 0);
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

std::vector<double> SweepResult::median_ratios() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    out.push_back(points[i].median / points[i + 1].median);
  }
  return out;
}

std::string SweepResult::manifest_json(const SweepConfig& config) const {
  json j;
  j["schema"] = kManifestSchema;
  j["csv_schema"] = kSweepCsvSchema;
  j["config"] = config_json(config.base);
  j["config"].erase("n");
  j["n_values"] = config.n_values;
  j["trials"] = config.trials;
  json pts = json::array();
  for (const auto& p : points) {
    pts.push_back({{"n", p.n}, {"median_linf_error", p.median}, {"errors", p.errors}});
  }
  j["points"] = pts;
  j["median_ratios"] = median_ratios();
  double runtime = 0.0;
  for (const auto& r : records) runtime += r.runtime_sec;
  j["runtime_sec_total"] = runtime;
  return j.dump(2) + "\n";
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.n_values.empty()) throw InvalidArgument("sweep needs at least one n");
  if (config.trials == 0) throw InvalidArgument("sweep needs at least one trial");
  const std::uint64_t per_n = config.trials;
  const std::uint64_t total = per_n * config.n_values.size();
  std::vector<ExperimentConfig> jobs;
  jobs.reserve(total);
  for (std::uint64_t n : config.n_values) {
    for (std::uint64_t t = 0; t < per_n; ++t) {
      ExperimentConfig c = config.base;
      c.n = n;
      c.seed = trial_seed(config.base.seed, t, n);
      c.out_csv.clear();
      c.validate();
      jobs.push_back(std::move(c));
    }
  }

  SweepResult out;
  out.records.resize(total);
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        out.records[i] = run_experiment(jobs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(total);
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, total));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::ostringstream csv;
  csv.precision(17);
  csv << "n,trial,seed,linf_error,reported\n";
  for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
    SweepPoint p;
    p.n = config.n_values[ni];
    for (std::uint64_t t = 0; t < per_n; ++t) {
      const auto& r = out.records[ni * per_n + t];
      p.errors.push_back(r.linf_error);
      csv << p.n << ',' << t << ',' << r.config.seed << ',' << r.linf_error << ','
          << r.reported << '\n';
    }
    p.median = median(p.errors);
    out.points.push_back(std::move(p));
  }
  out.csv = csv.str();
  if (!config.out_csv.empty()) {
    std::filesystem::path path(config.out_csv);
    write_file(path, out.csv);
    write_file(std::filesystem::path(path).replace_extension(".json"),
               out.manifest_json(config));
  }
  return out;
}

SuccinctHistogram parse_histogram_csv(const std::string& csv) {
  SuccinctHistogram h;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("item,", 0) != 0) throw InvalidArgument("histogram CSV lacks a header");
      continue;
    }
    const auto c1 = line.find(',');
    if (c1 == std::string::npos) throw InvalidArgument("malformed histogram row: " + line);
    const auto c2 = line.find(',', c1 + 1);
    try {
      std::size_t used = 0;
      const std::string item_text = line.substr(0, c1);
      const Item v = std::stoull(item_text, &used);
      if (used != item_text.size()) throw std::invalid_argument("item");
      const double f = std::stod(line.substr(c1 + 1, c2 == std::string::npos ? c2 : c2 - c1 - 1));
      h.entries.push_back({v, f});
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed histogram row: " + line);
    }
  }
  return h;
}

double fo_error_bound(std::uint64_t d, std::uint64_t n, double eps, double beta,
                      double constant) {
  return constant * std::sqrt(std::log(2.0 * static_cast<double>(d) / beta) /
                              (eps * eps * static_cast<double>(n)));
}

}  // namespace ldphh
