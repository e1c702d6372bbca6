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


#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rlematch/codec.hpp"
#include "rlematch/experiment.hpp"
#include "rlematch/process.hpp"

namespace rlematch::io {

using nlohmann::json;

/// `v` rounded to 12 significant digits, the precision of every number this
/// library writes.
double round12(double v);
std::string format12(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Lines of a raw sequence file, without line terminators. A trailing empty
/// line is dropped.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Encoded sequence as [[label, length], ...].
json runs_to_json(std::span<const Run> runs, const Alphabet& alphabet);

/// Parses [[label, length], ...]. Labels are added to `alphabet` when
/// `extend` is set, otherwise they must already be declared. Lengths must be
/// positive integers and adjacent labels must differ.
RunSequence runs_from_json(const json& j, Alphabet& alphabet, bool extend);

/// {"alphabet": [...], "probabilities": [...]}
BernoulliSpec bernoulli_from_json(const json& j);
/// {"alphabet": [...], "transition": [[...], ...]}
MarkovSpec markov_from_json(const json& j);

/// Either spec shape; a "transition" key selects Markov.
Source source_from_json(const json& j);
json source_to_json(const Source& source);

/// {"source": {...}, "n_grid": [...], "trials": T, "seed": S,
///  "method": "auto|closed|eigen|truncated", "cap": K, "threads": N,
///  "max_raw_length": L, "tolerance": r}
ExperimentConfig config_from_json(const json& j);

}  // namespace rlematch::io
