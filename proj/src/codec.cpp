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


#include "rlematch/codec.hpp"

#include <fmt/format.h>

#include "rlematch/error.hpp"

namespace rlematch {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kInvariant: return "invariant";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kHypothesis: return "hypothesis";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kEstimate: return "estimate";
    case ErrorCode::kResource: return "resource";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) {
      throw Error(ErrorCode::kValidation, "alphabet labels must be non-empty");
    }
    if (!index_.emplace(labels_[i], static_cast<Symbol>(i)).second) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("duplicate alphabet label '{}'", labels_[i]));
    }
  }
}

Alphabet Alphabet::from_text(std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Symbol> seen;
  for (auto& cp : split_utf8(text)) {
    if (seen.emplace(cp, static_cast<Symbol>(labels.size())).second) {
      labels.push_back(std::move(cp));
    }
  }
  return Alphabet(std::move(labels));
}

const std::string& Alphabet::label(Symbol s) const {
  if (!contains(s)) {
    throw Error(ErrorCode::kValidation,
                fmt::format("symbol index {} outside alphabet of size {}", s,
                            labels_.size()));
  }
  return labels_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view label) const {
  if (auto s = find(label)) return *s;
  throw Error(ErrorCode::kValidation,
              fmt::format("symbol '{}' is not in the declared alphabet", label));
}

std::vector<std::string> split_utf8(std::string_view text) {
  std::vector<std::string> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t width = 0;
    if (lead < 0x80) {
      width = 1;
    } else if ((lead >> 5) == 0x6) {
      width = 2;
    } else if ((lead >> 4) == 0xE) {
      width = 3;
    } else if ((lead >> 3) == 0x1E) {
      width = 4;
    } else {
      throw Error(ErrorCode::kValidation,
                  fmt::format("invalid UTF-8 lead byte at offset {}", i));
    }
    if (i + width > text.size()) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("truncated UTF-8 sequence at offset {}", i));
    }
    for (std::size_t k = 1; k < width; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) {
        throw Error(ErrorCode::kValidation,
                    fmt::format("invalid UTF-8 continuation at offset {}", i + k));
      }
    }
    out.emplace_back(text.substr(i, width));
    i += width;
  }
  return out;
}

SymbolSequence parse_symbols(std::string_view text, const Alphabet& alphabet) {
  SymbolSequence seq;
  seq.reserve(text.size());
  for (const auto& cp : split_utf8(text)) seq.push_back(alphabet.at(cp));
  return seq;
}

std::string format_symbols(std::span<const Symbol> seq,
                           const Alphabet& alphabet) {
  std::string out;
  out.reserve(seq.size());
  for (Symbol s : seq) out += alphabet.label(s);
  return out;
}

RunSequence rle_encode(std::span<const Symbol> seq) {
  RunSequence runs;
  for (Symbol s : seq) {
    if (!runs.empty() && runs.back().symbol == s) {
      ++runs.back().length;
    } else {
      runs.push_back(Run{s, 1});
    }
  }
  return runs;
}

RunSequence rle_encode(std::span<const Symbol> seq, const Alphabet& alphabet) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!alphabet.contains(seq[i])) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("symbol {} at position {} is not in the declared "
                              "alphabet of size {}",
                              seq[i], i, alphabet.size()));
    }
  }
  return rle_encode(seq);
}

void validate_runs(std::span<const Run> runs) {
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].length == 0) {
      throw Error(ErrorCode::kInvariant,
                  fmt::format("run {} has zero length", i));
    }
    if (i > 0 && runs[i].symbol == runs[i - 1].symbol) {
      throw Error(ErrorCode::kInvariant,
                  fmt::format("runs {} and {} share symbol {}", i - 1, i,
                              runs[i].symbol));
    }
  }
}

std::uint64_t decoded_length(std::span<const Run> runs) noexcept {
  std::uint64_t total = 0;
  for (const auto& r : runs) total += r.length;
  return total;
}

SymbolSequence rle_decode(std::span<const Run> runs) {
  validate_runs(runs);
  SymbolSequence seq;
  seq.reserve(decoded_length(runs));
  for (const auto& r : runs) seq.insert(seq.end(), r.length, r.symbol);
  return seq;
}

RunSequence encode_prefix_runs(std::span<const Symbol> seq, std::size_t n) {
  if (n > seq.size()) {
    throw Error(ErrorCode::kRange,
                fmt::format("prefix length {} exceeds sequence length {}", n,
                            seq.size()));
  }
  return rle_encode(seq.first(n));
}

}  // namespace rlematch
