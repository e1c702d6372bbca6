// Copyright 2026 The rlematch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rlematch/codec.hpp"
#include "rlematch/entropy.hpp"
#include "rlematch/error.hpp"
#include "rlematch/experiment.hpp"
#include "rlematch/io.hpp"
#include "rlematch/match.hpp"
#include "rlematch/process.hpp"

namespace py = pybind11;
using namespace rlematch;

namespace {

using RunList = std::vector<std::pair<std::string, std::uint64_t>>;

RunList to_run_list(const RunSequence& runs, const Alphabet& alphabet) {
  RunList out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.emplace_back(alphabet.label(r.symbol), r.length);
  return out;
}

RunSequence from_run_list(const RunList& runs, Alphabet& alphabet) {
  std::vector<std::string> labels = alphabet.labels();
  RunSequence out;
  out.reserve(runs.size());
  for (const auto& [label, length] : runs) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) it = labels.insert(labels.end(), label);
    out.push_back(Run{static_cast<Symbol>(it - labels.begin()), length});
  }
  alphabet = Alphabet(std::move(labels));
  return out;
}

py::dict estimate_to_dict(const EntropyEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["kind"] = std::string(to_string(e.kind));
  d["order"] = e.order;
  const auto& g = e.diagnostics;
  if (g.iterations) d["iterations"] = *g.iterations;
  if (g.samples) d["samples"] = *g.samples;
  if (g.cap) d["cap"] = *g.cap;
  if (g.block_length) d["block_length"] = *g.block_length;
  if (g.collisions) d["collisions"] = *g.collisions;
  if (g.collision_frequency) d["collision_frequency"] = *g.collision_frequency;
  if (g.standard_error) d["standard_error"] = *g.standard_error;
  if (g.limit_exists) d["limit_exists"] = *g.limit_exists;
  return d;
}

MarkovSpec markov_from_matrix(const Eigen::MatrixXd& transition) {
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < transition.rows(); ++i) labels.push_back(std::to_string(i));
  return MarkovSpec::create(Alphabet(std::move(labels)), transition);
}

py::tuple match_tuple(const MatchResult& m) {
  return py::make_tuple(m.length, m.witness_i, m.witness_j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Run-length encoded longest common substring and Renyi entropy";

  static PyObject* error_type =
      py::exception<Error>(m, "RlematchError", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  m.def(
      "rle_encode",
      [](const std::string& text, const std::string& alphabet) {
        const Alphabet a = Alphabet::from_text(alphabet.empty() ? text : alphabet);
        return to_run_list(rle_encode(parse_symbols(text, a), a), a);
      },
      py::arg("text"), py::arg("alphabet") = "",
      "Encode a string as a list of (symbol, length) runs.");

  m.def(
      "rle_decode",
      [](const RunList& runs) {
        Alphabet a;
        const auto seq = from_run_list(runs, a);
        return format_symbols(rle_decode(seq), a);
      },
      py::arg("runs"));

  m.def(
      "lcs",
      [](const std::string& a, const std::string& b, bool rle) {
        const Alphabet alpha = Alphabet::from_text(a + b);
        const auto x = parse_symbols(a, alpha);
        const auto y = parse_symbols(b, alpha);
        if (rle) return match_tuple(lcs_fast(rle_encode(x), rle_encode(y)));
        return match_tuple(lcs_fast(x, y));
      },
      py::arg("a"), py::arg("b"), py::arg("rle") = false,
      "Longest common substring as (length, i, j).");

  m.def(
      "lcs_multi",
      [](const std::vector<std::string>& seqs) {
        std::string all;
        for (const auto& s : seqs) all += s;
        const Alphabet alpha = Alphabet::from_text(all);
        std::vector<SymbolSequence> parsed;
        for (const auto& s : seqs) parsed.push_back(parse_symbols(s, alpha));
        return lcs_multi(parsed);
      },
      py::arg("seqs"));

  m.def(
      "m_rle",
      [](const std::string& x, const std::string& y, std::size_t n_runs) {
        const Alphabet alpha = Alphabet::from_text(x + y);
        return match_tuple(m_rle(parse_symbols(x, alpha), parse_symbols(y, alpha), n_runs));
      },
      py::arg("x"), py::arg("y"), py::arg("n_runs"));

  m.def(
      "m_tilde",
      [](const std::string& x, const std::string& y, std::size_t n) {
        const Alphabet alpha = Alphabet::from_text(x + y);
        return m_tilde(parse_symbols(x, alpha), parse_symbols(y, alpha), n);
      },
      py::arg("x"), py::arg("y"), py::arg("n"));

  m.def("h2_rle_bernoulli", [](double p) { return estimate_to_dict(h2_rle_bernoulli(p)); },
        py::arg("p"));
  m.def(
      "h2_rle_markov2",
      [](double p, double q) { return estimate_to_dict(h2_rle_markov2(p, q)); }, py::arg("p"),
      py::arg("q"));
  m.def(
      "h2_rle_markovN",
      [](const Eigen::MatrixXd& t) {
        return estimate_to_dict(h2_rle_markovN(markov_from_matrix(t)));
      },
      py::arg("transition"));
  m.def(
      "q2_truncated_eigen",
      [](const Eigen::MatrixXd& t, std::size_t cap) {
        return estimate_to_dict(q2_truncated_eigen(markov_from_matrix(t), cap));
      },
      py::arg("transition"), py::arg("cap") = 60);
  m.def("bernoulli_cylinder_sum_exact", &bernoulli_cylinder_sum_exact, py::arg("p"),
        py::arg("m"));
  m.def(
      "plugin_estimate",
      [](const std::string& source_json, std::size_t m, std::size_t samples,
         std::uint64_t seed, int order) {
        const Source source = io::source_from_json(io::json::parse(source_json));
        const auto prefixes = sample_run_prefixes(source, m, samples, seed);
        return estimate_to_dict(renyi_plugin_estimate(prefixes, m, order));
      },
      py::arg("source_json"), py::arg("m"), py::arg("samples"), py::arg("seed"),
      py::arg("order") = 2);

  m.def(
      "run_experiment_json",
      [](const std::string& config_json, const std::string& format) {
        const auto config = io::config_from_json(io::json::parse(config_json));
        ExperimentReport report;
        {
          py::gil_scoped_release release;
          report = run_experiment(config);
        }
        return render_report(report, parse_report_format(format));
      },
      py::arg("config_json"), py::arg("format") = "json",
      "Run an experiment from a JSON config and return the rendered report.");
}
