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


#include "rlematch/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "rlematch/error.hpp"

namespace rlematch::io {
namespace {

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kValidation, fmt::format("missing field '{}'", key));
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidation,
                fmt::format("field '{}' has the wrong type: {}", key, e.what()));
  }
}

Alphabet alphabet_from_json(const json& j) {
  return Alphabet(get_field<std::vector<std::string>>(j, "alphabet"));
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  return std::stod(fmt::format("{:.12g}", v));
}

std::string format12(double v) { return fmt::format("{:.12g}", v == 0.0 ? 0.0 : v); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot open '{}' for writing", path.string()));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIo, fmt::format("write to '{}' failed", path.string()));
  }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

json runs_to_json(std::span<const Run> runs, const Alphabet& alphabet) {
  json out = json::array();
  for (const auto& r : runs) {
    out.push_back(json::array({alphabet.label(r.symbol), r.length}));
  }
  return out;
}

RunSequence runs_from_json(const json& j, Alphabet& alphabet, bool extend) {
  if (!j.is_array()) {
    throw Error(ErrorCode::kValidation, "run sequence must be a JSON array");
  }
  std::vector<std::string> labels = alphabet.labels();
  RunSequence runs;
  runs.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& item = j[k];
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
        !item[1].is_number_integer()) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("run {} must be [symbol, length]", k));
    }
    const auto label = item[0].get<std::string>();
    // Non-negative integers parse as unsigned.
    if (!item[1].is_number_unsigned() || item[1].get<std::uint64_t>() == 0) {
      throw Error(ErrorCode::kInvariant,
                  fmt::format("run {} must have a positive length", k));
    }
    const auto length = item[1].get<std::uint64_t>();
    auto pos = std::find(labels.begin(), labels.end(), label);
    if (pos == labels.end()) {
      if (!extend) {
        throw Error(ErrorCode::kValidation,
                    fmt::format("symbol '{}' is not in the declared alphabet", label));
      }
      labels.push_back(label);
      pos = labels.end() - 1;
    }
    runs.push_back(Run{static_cast<Symbol>(pos - labels.begin()), length});
  }
  if (labels.size() != alphabet.size()) alphabet = Alphabet(std::move(labels));
  validate_runs(runs);
  return runs;
}

BernoulliSpec bernoulli_from_json(const json& j) {
  return BernoulliSpec::create(alphabet_from_json(j),
                               get_field<std::vector<double>>(j, "probabilities"));
}

MarkovSpec markov_from_json(const json& j) {
  auto alphabet = alphabet_from_json(j);
  const auto rows = get_field<std::vector<std::vector<double>>>(j, "transition");
  Eigen::MatrixXd t(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("transition row {} has {} entries, expected {}", i,
                              rows[i].size(), rows.size()));
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return MarkovSpec::create(std::move(alphabet), std::move(t));
}

Source source_from_json(const json& j) {
  if (j.is_object() && j.contains("transition")) return markov_from_json(j);
  return bernoulli_from_json(j);
}

json source_to_json(const Source& source) {
  json out;
  if (const auto* b = std::get_if<BernoulliSpec>(&source)) {
    out["type"] = "bernoulli";
    out["alphabet"] = b->alphabet.labels();
    json probs = json::array();
    for (double p : b->probabilities) probs.push_back(round12(p));
    out["probabilities"] = std::move(probs);
  } else {
    const auto& m = std::get<MarkovSpec>(source);
    out["type"] = "markov";
    out["alphabet"] = m.alphabet.labels();
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.transition.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < m.transition.cols(); ++k) {
        row.push_back(round12(m.transition(i, k)));
      }
      rows.push_back(std::move(row));
    }
    out["transition"] = std::move(rows);
  }
  return out;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kValidation, "experiment config must be a JSON object");
  }
  static const std::vector<std::string> known = {
      "source", "n_grid", "trials", "seed", "method",
      "cap", "threads", "max_raw_length", "tolerance"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("unknown experiment config field '{}'", key));
    }
  }
  ExperimentConfig config;
  config.source = source_from_json(get_field<json>(j, "source"));
  config.n_grid = get_field<std::vector<std::uint64_t>>(j, "n_grid");
  config.trials = get_field<std::uint32_t>(j, "trials");
  config.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("method")) {
    config.method = parse_entropy_method(get_field<std::string>(j, "method"));
  }
  if (j.contains("cap")) config.truncation_cap = get_field<std::size_t>(j, "cap");
  if (j.contains("threads")) config.threads = get_field<unsigned>(j, "threads");
  if (j.contains("max_raw_length")) {
    config.max_raw_length = get_field<std::uint64_t>(j, "max_raw_length");
  }
  if (j.contains("tolerance")) config.tolerance = get_field<double>(j, "tolerance");
  validate(config);
  return config;
}

}  // namespace rlematch::io
