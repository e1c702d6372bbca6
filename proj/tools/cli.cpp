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


#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rlematch/codec.hpp"
#include "rlematch/entropy.hpp"
#include "rlematch/error.hpp"
#include "rlematch/experiment.hpp"
#include "rlematch/io.hpp"
#include "rlematch/match.hpp"
#include "rlematch/process.hpp"

namespace rlematch::cli {
namespace {

using io::json;

struct ModelOptions {
  std::string model;
  std::optional<double> p;
  std::optional<double> q;
  std::string matrix;
  std::string spec;
};

void add_model_options(CLI::App& app, ModelOptions& m) {
  app.add_option("--model", m.model, "Source model")
      ->check(CLI::IsMember({"bernoulli", "markov2", "markovN"}));
  app.add_option("--p", m.p, "P(a) for bernoulli, p_aa for markov2");
  app.add_option("--q", m.q, "p_bb for markov2");
  app.add_option("--matrix", m.matrix,
                 "Markov spec JSON file {\"alphabet\", \"transition\"}");
  app.add_option("--spec", m.spec,
                 "Bernoulli spec JSON file {\"alphabet\", \"probabilities\"}");
}

template <class T>
T require(const std::optional<T>& v, std::string_view flag, std::string_view model) {
  if (!v) {
    throw Error(ErrorCode::kUsage,
                fmt::format("--model {} requires {}", model, flag));
  }
  return *v;
}

Source load_source(const ModelOptions& m) {
  if (m.model == "bernoulli") {
    if (!m.spec.empty()) {
      return io::bernoulli_from_json(json::parse(io::read_file(m.spec)));
    }
    return BernoulliSpec::binary(require(m.p, "--p", m.model));
  }
  if (m.model == "markov2") {
    return MarkovSpec::two_state(require(m.p, "--p", m.model),
                                 require(m.q, "--q", m.model));
  }
  if (m.model == "markovN") {
    if (m.matrix.empty()) {
      throw Error(ErrorCode::kUsage, "--model markovN requires --matrix");
    }
    return io::markov_from_json(json::parse(io::read_file(m.matrix)));
  }
  if (!m.matrix.empty()) {
    return io::markov_from_json(json::parse(io::read_file(m.matrix)));
  }
  if (!m.spec.empty()) {
    return io::bernoulli_from_json(json::parse(io::read_file(m.spec)));
  }
  throw Error(ErrorCode::kUsage, "--model is required");
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

json estimate_to_json(const EntropyEstimate& e) {
  json diag = json::object();
  const auto& d = e.diagnostics;
  if (d.iterations) diag["iterations"] = *d.iterations;
  if (d.samples) diag["samples"] = *d.samples;
  if (d.cap) diag["cap"] = *d.cap;
  if (d.block_length) diag["m"] = *d.block_length;
  if (d.collisions) diag["collisions"] = *d.collisions;
  if (d.collision_frequency) diag["collision_frequency"] = io::round12(*d.collision_frequency);
  if (d.standard_error) diag["standard_error"] = io::round12(*d.standard_error);
  if (d.limit_exists) diag["limit_exists"] = *d.limit_exists;
  return {{"value", io::round12(e.value)},
          {"kind", to_string(e.kind)},
          {"order", e.order},
          {"diagnostics", std::move(diag)}};
}

// A sequence file holds either raw text (first line) or an encoded JSON
// array of runs.
struct LoadedSequence {
  bool encoded = false;
  std::string raw;
  json runs;
};

LoadedSequence load_sequence(const std::string& path) {
  const std::string text = io::read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  LoadedSequence s;
  if (first != std::string::npos && text[first] == '[') {
    s.encoded = true;
    s.runs = json::parse(text);
  } else {
    auto lines = io::read_lines(path);
    s.raw = lines.empty() ? std::string() : lines.front();
  }
  return s;
}

int run_encode(const std::string& in, const std::string& alphabet_text,
               const std::string& out_path, std::ostream& out) {
  std::string result;
  for (const auto& line : io::read_lines(in)) {
    const Alphabet alphabet =
        alphabet_text.empty() ? Alphabet::from_text(line) : Alphabet::from_text(alphabet_text);
    const auto seq = parse_symbols(line, alphabet);
    result += io::runs_to_json(rle_encode(seq, alphabet), alphabet).dump() + "\n";
  }
  write_output(out_path, result, out);
  return kExitOk;
}

int run_decode(const std::string& in, const std::string& out_path, std::ostream& out) {
  std::string result;
  for (const auto& line : io::read_lines(in)) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Alphabet alphabet;
    const auto runs = io::runs_from_json(json::parse(line), alphabet, true);
    result += format_symbols(rle_decode(runs), alphabet) + "\n";
  }
  write_output(out_path, result, out);
  return kExitOk;
}

int run_generate(const ModelOptions& model, std::size_t n, std::uint64_t seed,
                 const std::string& out_path, std::ostream& out) {
  const Source source = load_source(model);
  const auto seq = generate(source, n, seed);
  write_output(out_path, format_symbols(seq, source_alphabet(source)) + "\n", out);
  return kExitOk;
}

int run_lcs(const std::string& a_path, const std::string& b_path,
            const std::vector<std::string>& more, bool rle,
            std::optional<std::size_t> window, const std::string& out_path,
            std::ostream& out) {
  std::vector<LoadedSequence> loaded;
  loaded.push_back(load_sequence(a_path));
  loaded.push_back(load_sequence(b_path));
  for (const auto& p : more) loaded.push_back(load_sequence(p));
  const bool as_runs =
      rle || std::any_of(loaded.begin(), loaded.end(),
                         [](const auto& s) { return s.encoded; });

  // One shared alphabet so equal labels map to equal symbols.
  std::vector<std::string> labels;
  for (const auto& s : loaded) {
    if (s.encoded) continue;
    for (auto& cp : split_utf8(s.raw)) {
      if (std::find(labels.begin(), labels.end(), cp) == labels.end()) {
        labels.push_back(std::move(cp));
      }
    }
  }
  Alphabet alphabet(labels);
  std::vector<SymbolSequence> raw;
  std::vector<RunSequence> runs;
  for (const auto& s : loaded) {
    if (s.encoded) {
      runs.push_back(io::runs_from_json(s.runs, alphabet, true));
    } else {
      raw.push_back(parse_symbols(s.raw, alphabet));
      if (as_runs) runs.push_back(rle_encode(raw.back()));
    }
  }

  json result;
  result["tokens"] = as_runs ? "runs" : "symbols";
  const auto apply_window = [&](auto& seqs) {
    if (!window) return;
    for (auto& s : seqs) {
      if (*window > s.size()) {
        throw Error(ErrorCode::kRange,
                    fmt::format("--n {} exceeds a sequence of {} tokens", *window,
                                s.size()));
      }
      s.resize(*window);
    }
  };
  if (as_runs) {
    apply_window(runs);
  } else {
    apply_window(raw);
  }
  if (loaded.size() > 2) {
    result["length"] = as_runs ? lcs_multi(runs) : lcs_multi(raw);
  } else {
    const auto m = as_runs ? lcs_fast(runs[0], runs[1]) : lcs_fast(raw[0], raw[1]);
    result["length"] = m.length;
    result["witness_i"] = m.witness_i;
    result["witness_j"] = m.witness_j;
  }
  write_output(out_path, result.dump() + "\n", out);
  return kExitOk;
}

struct EntropyOptions {
  std::string method = "closed";
  std::size_t cap = 60;
  std::size_t samples = 0;
  std::size_t m = 0;
  int order = 2;
  std::optional<std::uint64_t> seed;
};

int run_entropy(const ModelOptions& model, const EntropyOptions& opt,
                const std::string& out_path, std::ostream& out) {
  const Source source = load_source(model);
  EntropyEstimate e;
  if (opt.method == "closed") {
    if (model.model == "markovN") {
      throw Error(ErrorCode::kUnsupported,
                  "no closed form for markovN; use --method eigen or truncated");
    }
    e = source_entropy(source, EntropyMethod::kClosed);
  } else if (opt.method == "eigen") {
    e = source_entropy(source, EntropyMethod::kEigen);
  } else if (opt.method == "truncated") {
    e = q2_truncated_eigen(as_markov(source), opt.cap);
  } else {
    if (!opt.seed) throw Error(ErrorCode::kUsage, "--method plugin requires --seed");
    if (opt.samples == 0 || opt.m == 0) {
      throw Error(ErrorCode::kUsage, "--method plugin requires --samples and --m");
    }
    const auto prefixes = sample_run_prefixes(source, opt.m, opt.samples, *opt.seed);
    e = renyi_plugin_estimate(prefixes, opt.m, opt.order);
  }
  write_output(out_path, estimate_to_json(e).dump() + "\n", out);
  return kExitOk;
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::vector<std::uint64_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kUsage, fmt::format("bad --n-grid entry '{}'", item));
    }
  }
  return grid;
}

struct ExperimentOptions {
  std::string config;
  std::string n_grid;
  std::optional<std::uint32_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
  std::optional<std::size_t> cap;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> max_raw_length;
  std::string format = "json";
};

int run_experiment_cmd(const ModelOptions& model, const ExperimentOptions& opt,
                       const std::string& out_path, std::ostream& out) {
  ExperimentConfig config;
  if (!opt.config.empty()) {
    config = io::config_from_json(json::parse(io::read_file(opt.config)));
  } else {
    config.source = load_source(model);
    if (opt.n_grid.empty()) throw Error(ErrorCode::kUsage, "--n-grid is required");
    if (!opt.trials) throw Error(ErrorCode::kUsage, "--trials is required");
    if (!opt.seed) throw Error(ErrorCode::kUsage, "--seed is required");
  }
  if (!opt.n_grid.empty()) config.n_grid = parse_grid(opt.n_grid);
  if (opt.trials) config.trials = *opt.trials;
  if (opt.seed) config.seed = *opt.seed;
  if (opt.method) config.method = parse_entropy_method(*opt.method);
  if (opt.cap) config.truncation_cap = *opt.cap;
  if (opt.threads) config.threads = *opt.threads;
  if (opt.max_raw_length) config.max_raw_length = *opt.max_raw_length;
  const auto format = parse_report_format(opt.format);
  const auto report = run_experiment(config);
  write_output(out_path, render_report(report, format), out);
  return kExitOk;
}

void report_error(std::ostream& err, std::string_view code, std::string_view message) {
  err << json{{"code", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Run-length encoding, longest common substrings of encoded "
               "sequences, and Renyi entropy of the encoded process.",
               "rlematch"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string out_path;
  ModelOptions model;

  auto* encode = app.add_subcommand("encode", "Run-length encode a raw sequence file");
  std::string encode_in;
  std::string alphabet_text;
  encode->add_option("--in", encode_in, "Raw sequence file, one sequence per line")
      ->required();
  encode->add_option("--alphabet", alphabet_text,
                     "Declared alphabet, one character per symbol");
  encode->add_option("--out", out_path, "Output file (default stdout)");

  auto* decode = app.add_subcommand("decode", "Decode run JSON back to raw text");
  std::string decode_in;
  decode->add_option("--in", decode_in, "File with one JSON run array per line")
      ->required();
  decode->add_option("--out", out_path, "Output file (default stdout)");

  auto* gen = app.add_subcommand("generate", "Sample a sequence from a source");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  add_model_options(*gen, model);
  gen->add_option("--n", gen_n, "Sequence length")->required();
  gen->add_option("--seed", gen_seed, "64-bit seed")->required();
  gen->add_option("--out", out_path, "Output file (default stdout)");

  auto* lcs = app.add_subcommand("lcs", "Longest common substring of sequence files");
  std::string lcs_a;
  std::string lcs_b;
  std::vector<std::string> lcs_more;
  bool lcs_rle = false;
  std::optional<std::size_t> lcs_window;
  lcs->add_option("--a", lcs_a, "First sequence file (raw text or run JSON)")->required();
  lcs->add_option("--b", lcs_b, "Second sequence file (raw text or run JSON)")->required();
  lcs->add_option("--more", lcs_more, "Further sequences; reports the common length only");
  lcs->add_flag("--rle", lcs_rle, "Encode raw inputs and match run tokens");
  lcs->add_option("--n", lcs_window, "Restrict to the first n tokens of each sequence");
  lcs->add_option("--out", out_path, "Output file (default stdout)");

  auto* ent = app.add_subcommand("entropy", "Order-k Renyi entropy of the encoded source");
  EntropyOptions ent_opt;
  add_model_options(*ent, model);
  ent->add_option("--method", ent_opt.method, "Computation route")
      ->check(CLI::IsMember({"closed", "eigen", "truncated", "plugin"}));
  ent->add_option("--cap", ent_opt.cap, "Run-length cap for --method truncated");
  ent->add_option("--samples", ent_opt.samples, "Independent prefixes for --method plugin");
  ent->add_option("--m", ent_opt.m, "Runs per prefix for --method plugin");
  ent->add_option("--order", ent_opt.order, "Renyi order k >= 2 for --method plugin");
  ent->add_option("--seed", ent_opt.seed, "64-bit seed for --method plugin");
  ent->add_option("--out", out_path, "Output file (default stdout)");

  auto* exp = app.add_subcommand("experiment", "Monte Carlo growth-rate experiment");
  ExperimentOptions exp_opt;
  add_model_options(*exp, model);
  exp->add_option("--config", exp_opt.config, "Experiment config JSON file");
  exp->add_option("--n-grid", exp_opt.n_grid, "Comma-separated run counts");
  exp->add_option("--trials", exp_opt.trials, "Trials per grid point");
  exp->add_option("--seed", exp_opt.seed, "Master 64-bit seed");
  exp->add_option("--method", exp_opt.method, "Target entropy route")
      ->check(CLI::IsMember({"auto", "closed", "eigen", "truncated"}));
  exp->add_option("--cap", exp_opt.cap, "Run-length cap for --method truncated");
  exp->add_option("--threads", exp_opt.threads, "Worker threads");
  exp->add_option("--max-raw-length", exp_opt.max_raw_length,
                  "Cap on raw symbols generated per sequence");
  exp->add_option("--format", exp_opt.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("--out", out_path, "Output file (default stdout)");

  if (args.empty()) {
    out << app.help();
    return kExitUsage;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::Normal);
    if (auto subs = app.get_subcommands(); !subs.empty()) {
      out << subs.front()->help();
    }
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, to_string(ErrorCode::kUsage), e.what());
    return kExitUsage;
  }

  try {
    if (encode->parsed()) return run_encode(encode_in, alphabet_text, out_path, out);
    if (decode->parsed()) return run_decode(decode_in, out_path, out);
    if (gen->parsed()) return run_generate(model, gen_n, gen_seed, out_path, out);
    if (lcs->parsed()) {
      return run_lcs(lcs_a, lcs_b, lcs_more, lcs_rle, lcs_window, out_path, out);
    }
    if (ent->parsed()) return run_entropy(model, ent_opt, out_path, out);
    if (exp->parsed()) return run_experiment_cmd(model, exp_opt, out_path, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.code()), e.what());
    return e.code() == ErrorCode::kUsage ? kExitUsage : kExitFailure;
  } catch (const json::exception& e) {
    report_error(err, to_string(ErrorCode::kValidation), e.what());
    return kExitFailure;
  }
  report_error(err, to_string(ErrorCode::kUsage), "no subcommand");
  return kExitUsage;
}

}  // namespace rlematch::cli
