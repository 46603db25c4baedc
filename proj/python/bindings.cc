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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ldphh/channel.h"
#include "ldphh/codec.h"
#include "ldphh/core.h"
#include "ldphh/dataset.h"
#include "ldphh/harness.h"
#include "ldphh/prf.h"
#include "ldphh/randomizer.h"
#include "ldphh/wire.h"

namespace py = pybind11;
using namespace ldphh;

namespace {

Codeword from_signs(const std::vector<int>& signs) {
  Codeword x(signs.size());
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] != 1 && signs[j] != -1) throw InvalidArgument("signs must be +1 or -1");
    x.set_negative(j, signs[j] < 0);
  }
  return x;
}

std::vector<int> to_signs(const Codeword& x) {
  std::vector<int> out(x.m());
  for (std::uint64_t j = 0; j < x.m(); ++j) out[j] = x.sign(j);
  return out;
}

py::bytes as_bytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

std::vector<std::uint8_t> from_bytes(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

std::vector<RandomizerInput> inputs_of(const std::vector<std::optional<std::vector<int>>>& rows,
                                       std::uint64_t m) {
  std::vector<RandomizerInput> inputs;
  for (const auto& r : rows) {
    inputs.push_back(r ? RandomizerInput::of(from_signs(*r)) : RandomizerInput::zero(m));
  }
  return inputs;
}

ExperimentConfig make_config(const std::string& protocol, std::uint64_t d, std::uint64_t n,
                             double eps, double beta, const std::string& dataset,
                             std::optional<std::uint64_t> k, const std::string& mode,
                             const std::string& code, std::uint64_t seed, std::uint64_t run,
                             bool transport, const std::vector<Item>& probes,
                             const std::string& out) {
  ExperimentConfig c;
  c.protocol = parse_protocol(protocol);
  c.d = d;
  c.n = n;
  c.eps = eps;
  c.beta = beta;
  c.dataset = DatasetSpec::parse(dataset, d, n, seed);
  c.k_override = k;
  c.mode = parse_run_mode(mode);
  c.code = parse_code_kind(code);
  c.seed = seed;
  c.run = run;
  c.transport = transport;
  c.probes = probes;
  c.out_csv = out;
  return c;
}

}  // namespace

PYBIND11_MODULE(_ldphh, m) {
  m.doc() = "Locally private heavy hitters: randomizers, codes, protocols and harness";

  // Translators run most recent first, so subclasses are registered last.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<wire::WireError>(m, "WireError", PyExc_ValueError);

  py::class_<FoParams>(m, "FoParams")
      .def_readonly("d", &FoParams::d)
      .def_readonly("n", &FoParams::n)
      .def_readonly("eps", &FoParams::eps)
      .def_readonly("beta", &FoParams::beta)
      .def_readonly("gamma", &FoParams::gamma)
      .def_readonly("m_fo", &FoParams::m_fo);

  py::class_<HhParams>(m, "HhParams")
      .def_readonly("d", &HhParams::d)
      .def_readonly("n", &HhParams::n)
      .def_readonly("eps", &HhParams::eps)
      .def_readonly("beta", &HhParams::beta)
      .def_readonly("K", &HhParams::K)
      .def_readonly("T", &HhParams::T)
      .def_readonly("ell", &HhParams::ell)
      .def_readonly("eps_channel", &HhParams::eps_channel)
      .def_readonly("threshold", &HhParams::threshold)
      .def_readonly("k_overridden", &HhParams::k_overridden)
      .def_readonly("isolation_bound", &HhParams::isolation_bound);

  m.def("derive_fo_params", &derive_fo_params, py::arg("d"), py::arg("n"), py::arg("eps"),
        py::arg("beta"));
  m.def("derive_hh_params", &derive_hh_params, py::arg("d"), py::arg("n"), py::arg("eps"),
        py::arg("beta"), py::arg("k") = std::nullopt);
  m.def("c_eps", &c_eps, py::arg("eps"));

  py::class_<Prf>(m, "Prf")
      .def_static("from_seed", &Prf::from_seed, py::arg("seed"))
      .def("child", [](const Prf& p, const std::string& purpose) { return p.child(purpose); })
      .def_property_readonly("key_hex", [](const Prf& p) { return to_hex(p.key()); })
      .def("word", [](const Prf& p, std::uint32_t tag, std::uint64_t a, std::uint64_t b,
                      std::uint64_t index) {
        return p.word({static_cast<StreamTag>(tag), a, b}, index);
      }, py::arg("tag"), py::arg("a"), py::arg("b"), py::arg("index"));

  m.def("report_distribution",
        [](const std::optional<std::vector<int>>& signs, double eps, std::uint64_t m_dim) {
          const auto input = signs ? RandomizerInput::of(from_signs(*signs)) : RandomizerInput::zero(m_dim);
          return report_distribution(input, eps);
        },
        py::arg("signs"), py::arg("eps"), py::arg("m") = 0,
        "Probabilities of the 2m outcomes (j, sign), ordered 2j for + and 2j+1 for -.");
  m.def("randomize",
        [](const std::vector<int>& signs, double eps, std::uint64_t seed) {
          Rng rng(seed);
          const SparseReport r = randomize(RandomizerInput::of(from_signs(signs)), eps, rng);
          return py::make_tuple(r.position, static_cast<int>(r.sign));
        },
        py::arg("signs"), py::arg("eps"), py::arg("seed"));
  m.def("audit_randomizer",
        [](const std::vector<std::optional<std::vector<int>>>& rows, std::uint64_t m_dim, double eps) {
          return audit_ldp(basic_randomizer_channel(inputs_of(rows, m_dim), eps)).eps_observed();
        },
        py::arg("inputs"), py::arg("m"), py::arg("eps"),
        "Observed epsilon of the basic randomizer over the given inputs (None is the zero input).");
  m.def("audit_degraded",
        [](const std::vector<std::vector<int>>& codewords, double eps, double eta) {
          std::vector<std::optional<std::vector<int>>> rows(codewords.begin(), codewords.end());
          const std::uint64_t m_dim = codewords.empty() ? 0 : codewords[0].size();
          const ChannelMatrix ch = compose(degrading_channel(codewords.size(), eta),
                                           basic_randomizer_channel(inputs_of(rows, m_dim), eps));
          const std::vector<double> prior(codewords.size(), 1.0 / codewords.size());
          return py::make_tuple(audit_ldp(ch).eps_observed(), mutual_information(prior, ch));
        },
        py::arg("codewords"), py::arg("eps"), py::arg("eta"),
        "(observed epsilon, mutual information under a uniform prior) of degrade then randomize.");
  m.def("amplified_epsilon", &amplified_epsilon, py::arg("eps"), py::arg("eta"));

  py::class_<Code, std::shared_ptr<Code>>(m, "Code")
      .def_property_readonly("d", &Code::d)
      .def_property_readonly("m", &Code::m)
      .def_property_readonly("t", &Code::t)
      .def_property_readonly("zeta_eff", &Code::zeta_eff)
      .def("encode", [](const Code& c, Item v) { return to_signs(c.encode(v)); }, py::arg("v"))
      .def("decode", [](const Code& c, const std::vector<int>& signs) { return c.decode(from_signs(signs)); },
           py::arg("signs"))
      .def("round_and_decode", [](const Code& c, const std::vector<double>& z) {
        return c.decode(round_to_hypercube(z));
      }, py::arg("z"));
  m.def("build_code",
        [](std::uint64_t d, const std::string& kind) {
          return std::const_pointer_cast<Code>(build_code(d, parse_code_kind(kind)));
        },
        py::arg("d"), py::arg("kind") = "concatenated");

  m.def("gen_dataset",
        [](const std::string& spec, std::uint64_t d, std::uint64_t n, std::uint64_t seed) {
          return gen_dataset(DatasetSpec::parse(spec, d, n, seed));
        },
        py::arg("spec"), py::arg("d"), py::arg("n"), py::arg("seed") = 0);

  py::class_<MetricsRecord>(m, "MetricsRecord")
      .def_readonly("linf_error", &MetricsRecord::linf_error)
      .def_readonly("precision", &MetricsRecord::precision)
      .def_readonly("recall", &MetricsRecord::recall)
      .def_readonly("pp_item", &MetricsRecord::pp_item)
      .def_readonly("pp_f_hat", &MetricsRecord::pp_f_hat)
      .def_readonly("reported", &MetricsRecord::reported)
      .def_readonly("runtime_sec", &MetricsRecord::runtime_sec)
      .def_readonly("csv", &MetricsRecord::csv)
      .def_property_readonly("histogram", [](const MetricsRecord& r) {
        std::vector<std::pair<Item, double>> out;
        for (const auto& e : r.output.entries) out.emplace_back(e.item, e.frequency);
        return out;
      })
      .def("manifest_json", &MetricsRecord::manifest_json);

  m.def("run_experiment",
        [](const std::string& protocol, std::uint64_t d, std::uint64_t n, double eps, double beta,
           const std::string& dataset, std::optional<std::uint64_t> k, const std::string& mode,
           const std::string& code, std::uint64_t seed, std::uint64_t run, bool transport,
           const std::vector<Item>& probes, const std::string& out) {
          const ExperimentConfig c = make_config(protocol, d, n, eps, beta, dataset, k, mode, code,
                                                 seed, run, transport, probes, out);
          c.validate();
          py::gil_scoped_release release;
          return run_experiment(c);
        },
        py::arg("protocol"), py::arg("d"), py::arg("n"), py::arg("eps"), py::arg("beta") = 0.1,
        py::arg("dataset") = "uniform", py::arg("k") = std::nullopt, py::arg("mode") = "fast",
        py::arg("code") = "concatenated", py::arg("seed") = 0, py::arg("run") = 0,
        py::arg("transport") = false, py::arg("probes") = std::vector<Item>{},
        py::arg("out") = "");

  m.def("encode_report_frame",
        [](bool fo, std::uint64_t user, std::uint16_t t, std::uint32_t k, std::uint32_t j, int sign) {
          wire::ReportPayload p{user, t, k, j, static_cast<std::uint8_t>(sign > 0 ? 1 : 0)};
          return as_bytes(wire::encode_frame(
              wire::make_frame(fo ? wire::MsgType::kFoReport : wire::MsgType::kPpReport, p.encode())));
        },
        py::arg("fo"), py::arg("user"), py::arg("t"), py::arg("k"), py::arg("j"), py::arg("sign"));
  m.def("decode_frame",
        [](const py::bytes& data) {
          std::size_t used = 0;
          const auto bytes = from_bytes(data);
          const wire::Frame f = wire::decode_frame(bytes, &used);
          return py::make_tuple(static_cast<int>(f.type), as_bytes(f.payload), used);
        },
        py::arg("data"), "(message type, payload, bytes consumed) of the first frame.");
}
