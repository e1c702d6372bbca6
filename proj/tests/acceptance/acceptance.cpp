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


// Acceptance suite. Prints one PASS/FAIL line per criterion; exits non-zero
// when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "../oracles.hpp"
#include "cli.hpp"
#include "rlematch/codec.hpp"
#include "rlematch/entropy.hpp"
#include "rlematch/match.hpp"
#include "rlematch/process.hpp"

namespace rlematch::acceptance {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

Verdict codec_exactness() {
  const std::string text = "00001110000000011001111111111100000000";
  const Alphabet alphabet({"0", "1"});
  const auto runs = rle_encode(parse_symbols(text, alphabet), alphabet);
  const RunSequence expected{{0, 4}, {1, 3}, {0, 8}, {1, 2}, {0, 2}, {1, 9}, {0, 8}};
  const bool exact = runs == expected;

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> len(0, 1000);
  std::uniform_int_distribution<Symbol> k(2, 5);
  std::size_t failures = 0;
  for (int trial = 0; trial < 10'000; ++trial) {
    const auto seq = trial % 2 == 0 ? oracle::random_symbols(rng, len(rng), k(rng))
                                    : oracle::random_runny(rng, len(rng), k(rng), 0.7);
    if (rle_decode(rle_encode(seq)) != seq) ++failures;
  }

  std::string got;
  for (const auto& r : runs) got += fmt::format("({},{})", alphabet.label(r.symbol), r.length);
  return {exact && failures == 0,
          fmt::format("encoding {} {} expected; round-trip failures {}/10000", got,
                      exact ? "matches" : "differs from", failures)};
}

Verdict lcs_oracle() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> len(0, 200);
  std::uniform_int_distribution<Symbol> k(2, 5);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    if (trial % 2 == 0) {
      const auto a = oracle::random_symbols(rng, len(rng), k(rng));
      const auto b = oracle::random_symbols(rng, len(rng), k(rng));
      if (lcs_fast(a, b).length != lcs_bruteforce(std::span<const Symbol>(a),
                                                  std::span<const Symbol>(b))
                                       .length) {
        ++mismatches;
      }
    } else {
      // Run tokens: encode runny raw data and keep at most 200 tokens.
      const Symbol alpha = k(rng);
      auto a = rle_encode(oracle::random_runny(rng, 600, alpha, 0.5));
      auto b = rle_encode(oracle::random_runny(rng, 600, alpha, 0.5));
      a.resize(std::min(a.size(), len(rng)));
      b.resize(std::min(b.size(), len(rng)));
      if (lcs_fast(a, b).length != lcs_bruteforce(std::span<const Run>(a),
                                                  std::span<const Run>(b))
                                       .length) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0, fmt::format("{} mismatches on 1000 pairs", mismatches)};
}

Verdict bridging() {
  std::mt19937_64 rng(3);
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t checks = 0;
  for (std::size_t n : {50, 200}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Symbol k = 2 + static_cast<Symbol>(trial % 3);
      SymbolSequence x;
      SymbolSequence y;
      // Regenerate until both encodings hold n complete runs.
      do {
        x = oracle::random_runny(rng, 6 * n, k, 0.5);
        y = oracle::random_runny(rng, 6 * n, k, 0.5);
      } while (complete_runs(rle_encode(x)).size() < n ||
               complete_runs(rle_encode(y)).size() < n);
      const auto fx = rle_encode(x);
      const auto fy = rle_encode(y);
      const std::size_t tilde = m_tilde(x, y, n);
      if (m_rle_runs(fx, fy, n).length + 1 < tilde) ++lower;
      const std::size_t u_max =
          std::min(encode_prefix_runs(x, n).size(), encode_prefix_runs(y, n).size());
      for (std::size_t u = 2; u <= u_max; ++u) {
        if (m_rle_runs(fx, fy, u).length > tilde) ++upper;
        ++checks;
      }
    }
  }
  return {lower == 0 && upper == 0,
          fmt::format("lower-bound violations {}/1000, upper-bound violations {}/{}", lower,
                      upper, checks)};
}

Verdict closed_forms() {
  double worst = 0.0;
  for (int k = 1; k <= 99; ++k) {
    const double p = k / 100.0;
    worst = std::max(worst,
                     std::abs(h2_rle_markov2(p, 1.0 - p).value - h2_rle_bernoulli(p).value));
  }
  const double half = std::abs(h2_rle_bernoulli(0.5).value - std::log(3.0));
  return {worst <= 1e-12 && half <= 1e-12,
          fmt::format("max |markov2 - bernoulli| = {:.3g}; |H(0.5) - log 3| = {:.3g}", worst,
                      half)};
}

Verdict eigen_reduction() {
  double worst_eigen = 0.0;
  double worst_trunc = 0.0;
  std::size_t trunc_fail = 0;
  std::size_t specs = 0;
  const auto check_trunc = [&](const MarkovSpec& spec, double reference) {
    const double err = std::abs(q2_truncated_eigen(spec, 60).value - reference);
    worst_trunc = std::max(worst_trunc, err);
    if (err > 1e-8) ++trunc_fail;
    ++specs;
  };
  for (int a = 1; a <= 9; ++a) {
    for (int b = 1; b <= 9; ++b) {
      const auto spec = MarkovSpec::two_state(a / 10.0, b / 10.0);
      const double eig = h2_rle_markovN(spec).value;
      worst_eigen =
          std::max(worst_eigen, std::abs(eig - h2_rle_markov2(a / 10.0, b / 10.0).value));
      check_trunc(spec, eig);
    }
  }
  const auto uniform = MarkovSpec::create(Alphabet({"a", "b", "c"}),
                                          Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0));
  const double u = h2_rle_markovN(uniform).value;
  const double uniform_err = std::abs(u - std::log(4.0));
  check_trunc(uniform, u);
  const bool pass = worst_eigen <= 1e-10 && uniform_err <= 1e-10 && trunc_fail == 0;
  return {pass, fmt::format("max |markovN - markov2| = {:.3g}; |uniform3 - log 4| = {:.3g}; "
                            "cap 60 truncation over 1e-8 on {}/{} specs (max {:.3g})",
                            worst_eigen, uniform_err, trunc_fail, specs, worst_trunc)};
}

Verdict plugin_calibration() {
  const auto prefixes = sample_run_prefixes(BernoulliSpec::binary(0.5), 4, 100'000, 6);
  const auto e = renyi_plugin_estimate(prefixes, 4, 2);
  const double exact = bernoulli_cylinder_sum_exact(0.5, 4);
  const double freq = *e.diagnostics.collision_frequency;
  const double se = *e.diagnostics.standard_error;
  const double z = (freq - exact) / se;
  return {std::abs(z) <= 3.0,
          fmt::format("collision frequency {:.6g} vs exact {:.6g}, SE {:.3g}, z = {:.2f}", freq,
                      exact, se, z)};
}

const std::vector<std::string>& limit_law_args(const std::string& model) {
  static const std::map<std::string, std::vector<std::string>> args = {
      {"bernoulli",
       {"experiment", "--model", "bernoulli", "--p", "0.5", "--n-grid",
        "1024,2048,4096,8192,16384,32768,65536", "--trials", "50", "--seed", "20240601",
        "--format", "json"}},
      {"markov2",
       {"experiment", "--model", "markov2", "--p", "0.5", "--q", "0.5", "--n-grid",
        "1024,2048,4096,8192,16384,32768,65536", "--trials", "50", "--seed", "20240602",
        "--format", "json"}},
  };
  return args.at(model);
}

std::string invoke(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = cli::dispatch(args, out, err);
  if (code != 0) return err.str();
  return out.str();
}

Verdict limit_law() {
  bool pass = true;
  std::string detail;
  for (const char* model : {"bernoulli", "markov2"}) {
    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    const auto text = invoke(limit_law_args(model), code);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (code != 0) {
      pass = false;
      detail += fmt::format("{}: exit {} {}; ", model, code, text);
      continue;
    }
    const auto j = nlohmann::json::parse(text);
    const double slope = j["slope"].get<double>();
    const double target = j["target"].get<double>();
    const double dev = j["relative_deviation"].get<double>();
    const bool ok = dev <= 0.2 && seconds <= 300.0;
    pass = pass && ok;
    detail += fmt::format("{}: slope {:.6f} vs 2/H2 {:.6f} ({:.1f}% off, {:.1f}s); ", model,
                          slope, target, 100.0 * dev, seconds);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Verdict determinism() {
  std::size_t identical = 0;
  for (const char* model : {"bernoulli", "markov2"}) {
    int c1 = 0;
    int c2 = 0;
    const auto first = invoke(limit_law_args(model), c1);
    const auto second = invoke(limit_law_args(model), c2);
    if (c1 == 0 && c2 == 0 && first == second) ++identical;
  }
  return {identical == 2, fmt::format("{}/2 reports byte-identical on repeat", identical)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

int run_all(const std::vector<int>& selected) {
  const std::vector<Criterion> criteria = {
      {1, "codec exactness", codec_exactness},
      {2, "lcs oracle equivalence", lcs_oracle},
      {3, "bridging inequalities", bridging},
      {4, "closed-form identities", closed_forms},
      {5, "eigenvalue reduction", eigen_reduction},
      {6, "plug-in calibration", plugin_calibration},
      {7, "limit-law reproduction", limit_law},
      {8, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    std::cout << fmt::format("{} criterion {} ({}): {}\n", v.pass ? "PASS" : "FAIL", c.id,
                             c.name, v.detail)
              << std::flush;
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace rlematch::acceptance

int main(int argc, char** argv) {
  CLI::App app{"rlematch acceptance suite"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion to run (repeatable; default all)")
      ->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);
  return rlematch::acceptance::run_all(selected);
}
