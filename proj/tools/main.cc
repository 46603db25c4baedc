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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldphh/channel.h"
#include "ldphh/dataset.h"
#include "ldphh/harness.h"
#include "ldphh/onebit.h"
#include "ldphh/transport.h"

namespace {

using namespace ldphh;

struct CommonFlags {
  std::uint64_t d = 1024;
  std::uint64_t n = 10000;
  double eps = 1.0;
  double beta = 0.1;
  std::uint64_t k = 0;
  std::string mode = "fast";
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  std::string dataset = "uniform";
  std::string code = "concatenated";
  std::string out;
  std::string out_dir;
  bool transport = false;
  std::vector<Item> probes;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--d", f.d, "Universe size")->capture_default_str();
  cmd->add_option("--n", f.n, "Number of users")->capture_default_str();
  cmd->add_option("--eps", f.eps, "Privacy parameter epsilon")->capture_default_str();
  cmd->add_option("--beta", f.beta, "Failure probability")->capture_default_str();
  cmd->add_option("--k", f.k, "Override the number of hash channels K (0 = default)")
      ->capture_default_str();
  cmd->add_option("--mode", f.mode, "Simulation mode")
      ->check(CLI::IsMember({"fast", "faithful"}))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  cmd->add_option("--run", f.run, "Run index within the seed")->capture_default_str();
  cmd->add_option("--dataset", f.dataset,
                  "uniform | zipf:S | planted:V=F,... | promise:ETA@V")
      ->capture_default_str();
  cmd->add_option("--code", f.code, "Error-correcting code")
      ->check(CLI::IsMember({"concatenated", "reference"}))
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output CSV path; the manifest goes next to it");
  cmd->add_option("--out-dir", f.out_dir, "Default output directory")->envname("LDPHH_OUT_DIR");
  cmd->add_flag("--transport", f.transport, "Route reports through a loopback TCP session");
  cmd->add_option("--probe", f.probes, "Items whose per-channel estimates are recorded");
}

std::string output_path(const CommonFlags& f, const std::string& stem) {
  if (!f.out.empty()) return f.out;
  const std::filesystem::path dir = f.out_dir.empty() ? "." : f.out_dir;
  return (dir / (stem + "-" + std::to_string(f.seed) + ".csv")).string();
}

ExperimentConfig experiment_config(const CommonFlags& f, Protocol p) {
  ExperimentConfig c;
  c.protocol = p;
  c.d = f.d;
  c.n = f.n;
  c.eps = f.eps;
  c.beta = f.beta;
  if (f.k) c.k_override = f.k;
  c.mode = parse_run_mode(f.mode);
  c.code = parse_code_kind(f.code);
  c.seed = f.seed;
  c.run = f.run;
  c.transport = f.transport;
  c.probes = f.probes;
  c.dataset = DatasetSpec::parse(f.dataset, f.d, f.n, f.seed);
  return c;
}

int run_protocol(const CommonFlags& f, Protocol p) {
  ExperimentConfig c = experiment_config(f, p);
  c.out_csv = output_path(f, to_string(p));
  const MetricsRecord rec = run_experiment(c);
  std::cout << rec.manifest_json();
  std::cerr << "wrote " << c.out_csv << "\n";
  return 0;
}

// Codeword inputs of the basic randomizer for the audit: every hypercube
// vertex when that is small, otherwise the two constant vertices, which
// realize every per-coordinate input value.
std::vector<RandomizerInput> audit_inputs(std::uint64_t m) {
  std::vector<RandomizerInput> inputs;
  if (m <= 10) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      Codeword x(m);
      for (std::uint64_t j = 0; j < m; ++j) x.set_negative(j, (mask >> j) & 1);
      inputs.push_back(RandomizerInput::of(x));
    }
  } else {
    Codeword plus(m), minus(m);
    for (std::uint64_t j = 0; j < m; ++j) minus.set_negative(j, true);
    inputs.push_back(RandomizerInput::of(plus));
    inputs.push_back(RandomizerInput::of(minus));
  }
  return inputs;
}

int run_audit(const std::string& target, std::uint64_t m, std::uint64_t d, double eps,
              double eta, std::uint64_t seed, const std::string& out) {
  double observed = 0.0;
  double bound = 0.0;
  std::unique_ptr<ChannelMatrix> channel;
  if (target == "randomizer") {
    channel = std::make_unique<ChannelMatrix>(basic_randomizer_channel(audit_inputs(m), eps));
    bound = eps;
  } else if (target == "degrade") {
    if (d > (std::uint64_t{1} << m)) throw InvalidArgument("degrade audit needs d <= 2^m");
    std::vector<RandomizerInput> inputs;
    for (Item v = 0; v < d; ++v) {
      Codeword x(m);
      for (std::uint64_t j = 0; j < m; ++j) x.set_negative(j, (v >> j) & 1);
      inputs.push_back(RandomizerInput::of(x));
    }
    channel = std::make_unique<ChannelMatrix>(
        compose(degrading_channel(d, eta), basic_randomizer_channel(inputs, eps)));
    bound = amplified_epsilon(eps, eta);
  } else {
    const auto s = OneBitStructure::fo_only(Prf::from_seed(seed), m, eps);
    channel = std::make_unique<ChannelMatrix>(onebit_bit_channel(s, d));
    bound = s.total_epsilon();
  }
  observed = audit_ldp(*channel).eps_observed();
  if (!out.empty()) {
    std::ofstream f(out);
    channel->write_csv(f);
  }
  std::printf("target=%s eps_observed=%.12g bound=%.12g ok=%s\n", target.c_str(), observed,
              bound, observed <= bound + 1e-9 ? "true" : "false");
  return observed <= bound + 1e-9 ? 0 : 1;
}

SessionConfig session_from(const CommonFlags& f, const std::string& kind) {
  SessionConfig s;
  s.kind = parse_session_kind(kind);
  s.d = f.d;
  s.n = f.n;
  s.eps = f.eps;
  s.beta = f.beta;
  s.k_override = f.k;
  s.master_seed = f.seed;
  s.code = parse_code_kind(f.code);
  s.run = f.run;
  return s;
}

int run_serve(const SessionConfig& sc, const std::string& host, std::uint16_t port,
              const std::string& out) {
  AggregationSession session(sc);
  AggregationServer server(session, host, port);
  std::cout << "listening on " << host << ":" << server.port() << std::endl;
  server.run();
  const std::string csv = session.result_csv();
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    f << csv;
  } else {
    std::cout << csv;
  }
  return 0;
}

int run_submit(const std::string& host, std::uint16_t port, const std::string& dataset,
               std::uint64_t first, std::uint64_t last, bool close) {
  AggregationClient client(host, port);
  const SessionConfig sc = client.fetch_config();
  const auto items =
      gen_dataset(DatasetSpec::parse(dataset, sc.d, sc.n, sc.master_seed));
  last = std::min(last, sc.n);
  const ClientEncoder encoder(sc, sc.pub().child("private"));
  SubmitSummary total;
  std::vector<wire::Frame> batch;
  for (std::uint64_t i = first; i < last; ++i) {
    encoder.frames(i, items[i], batch);
    if (batch.size() >= 4096 || i + 1 == last) {
      const auto s = client.submit(batch);
      total.accepted += s.accepted;
      total.duplicates += s.duplicates;
      batch.clear();
    }
  }
  std::cerr << "accepted=" << total.accepted << " duplicates=" << total.duplicates << "\n";
  if (close) std::cout << client.close_session();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private frequency estimation and succinct histograms"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  CommonFlags fo_f, pp_f, hist_f, sweep_f, serve_f;

  auto* fo = app.add_subcommand("fo", "Frequency oracle over all items");
  add_common(fo, fo_f);
  bool fo_one_bit = false;
  fo->add_flag("--one-bit", fo_one_bit, "Each user sends a single bit");

  auto* pp = app.add_subcommand("pp", "Promise (unique heavy hitter) protocol");
  add_common(pp, pp_f);

  auto* hist = app.add_subcommand("hist", "Succinct histogram protocol");
  add_common(hist, hist_f);
  bool hist_one_bit = false;
  hist->add_flag("--one-bit", hist_one_bit, "Each user sends a single bit");

  auto* audit = app.add_subcommand("audit", "Exact privacy audit of a small channel");
  std::string audit_target = "randomizer";
  std::uint64_t audit_m = 8, audit_d = 16, audit_seed = 0;
  double audit_eps = 1.0, audit_eta = 1.0;
  std::string audit_out;
  audit->add_option("--target", audit_target)
      ->check(CLI::IsMember({"randomizer", "degrade", "onebit"}))
      ->capture_default_str();
  audit->add_option("--m", audit_m, "Report dimension")->capture_default_str();
  audit->add_option("--d", audit_d, "Universe size (degrade, onebit)")->capture_default_str();
  audit->add_option("--eps", audit_eps)->capture_default_str();
  audit->add_option("--eta", audit_eta, "Degrading-channel pass probability")
      ->capture_default_str();
  audit->add_option("--seed", audit_seed)->capture_default_str();
  audit->add_option("--out", audit_out, "Write the channel matrix as CSV");

  auto* serve = app.add_subcommand("serve", "Run an aggregation session over TCP");
  add_common(serve, serve_f);
  std::string serve_kind = "hist", serve_host = "127.0.0.1", session_file;
  std::uint16_t serve_port = 7070;
  serve->add_option("--kind", serve_kind)
      ->check(CLI::IsMember({"fo", "hist", "fo-onebit", "hist-onebit"}))
      ->capture_default_str();
  serve->add_option("--host", serve_host)->capture_default_str();
  serve->add_option("--port", serve_port, "0 picks a free port")->capture_default_str();
  serve->add_option("--session", session_file, "key=value session file (overrides flags)");

  auto* submit = app.add_subcommand("submit", "Submit users' reports to a session");
  std::string submit_host = "127.0.0.1", submit_dataset = "uniform";
  std::uint16_t submit_port = 7070;
  std::uint64_t submit_first = 0, submit_last = UINT64_MAX;
  bool submit_close = false;
  submit->add_option("--host", submit_host)->capture_default_str();
  submit->add_option("--port", submit_port)->capture_default_str();
  submit->add_option("--dataset", submit_dataset)->capture_default_str();
  submit->add_option("--first-user", submit_first)->capture_default_str();
  submit->add_option("--last-user", submit_last, "Exclusive; defaults to n");
  submit->add_flag("--close", submit_close, "Close the session and print the result CSV");

  auto* sweep = app.add_subcommand("sweep", "Repeated trials over several population sizes");
  add_common(sweep, sweep_f);
  std::string sweep_protocol = "fo";
  std::vector<std::uint64_t> n_values{10000, 40000};
  std::uint64_t trials = 20;
  unsigned threads = 0;
  sweep->add_option("--protocol", sweep_protocol)
      ->check(CLI::IsMember({"fo", "pp", "hist", "hist-onebit", "fo-onebit"}))
      ->capture_default_str();
  sweep->add_option("--n-values", n_values)->delimiter(',')->capture_default_str();
  sweep->add_option("--trials", trials)->capture_default_str();
  sweep->add_option("--threads", threads, "0 = all cores")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fo) return run_protocol(fo_f, fo_one_bit ? Protocol::kFoOneBit : Protocol::kFo);
    if (*pp) return run_protocol(pp_f, Protocol::kPp);
    if (*hist) {
      return run_protocol(hist_f, hist_one_bit ? Protocol::kHistOneBit : Protocol::kHist);
    }
    if (*audit) {
      return run_audit(audit_target, audit_m, audit_d, audit_eps, audit_eta, audit_seed,
                       audit_out);
    }
    if (*serve) {
      SessionConfig sc = session_from(serve_f, serve_kind);
      if (!session_file.empty()) sc = SessionConfig::from_kv(KeyValueConfig::load(session_file));
      return run_serve(sc, serve_host, serve_port, serve_f.out);
    }
    if (*submit) {
      return run_submit(submit_host, submit_port, submit_dataset, submit_first, submit_last,
                        submit_close);
    }
    if (*sweep) {
      SweepConfig sc;
      sc.base = experiment_config(sweep_f, parse_protocol(sweep_protocol));
      sc.n_values = n_values;
      sc.trials = trials;
      sc.threads = threads;
      sc.out_csv = output_path(sweep_f, "sweep-" + sweep_protocol);
      const SweepResult res = run_sweep(sc);
      std::cout << res.manifest_json(sc);
      std::cerr << "wrote " << sc.out_csv << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
