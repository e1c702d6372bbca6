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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rlematch {

/// Index of a symbol in its Alphabet.
using Symbol = std::uint32_t;

/// Raw sequence over a finite alphabet, stored as alphabet indices.
using SymbolSequence = std::vector<Symbol>;

/// One token of the encoded alphabet: a maximal block of `length` copies of
/// `symbol`.
struct Run {
  Symbol symbol = 0;
  std::uint64_t length = 1;

  friend auto operator<=>(const Run&, const Run&) = default;
};

/// Encoded sequence. Adjacent runs carry distinct symbols and every length is
/// at least one.
using RunSequence = std::vector<Run>;

/// Finite, ordered set of symbol labels. Labels are opaque strings compared
/// by equality; position in the list is the symbol's index.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  /// Distinct UTF-8 code points of `text` in order of first appearance.
  static Alphabet from_text(std::string_view text);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  bool contains(Symbol s) const noexcept { return s < labels_.size(); }
  const std::string& label(Symbol s) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Symbol> find(std::string_view label) const;

  /// Index of `label`; throws a validation error if it is not declared.
  Symbol at(std::string_view label) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Symbol> index_;
};

/// Splits UTF-8 text into code points. Throws on malformed input.
std::vector<std::string> split_utf8(std::string_view text);

/// Maps each code point of `text` to its index in `alphabet`.
SymbolSequence parse_symbols(std::string_view text, const Alphabet& alphabet);

/// Inverse of parse_symbols.
std::string format_symbols(std::span<const Symbol> seq,
                           const Alphabet& alphabet);

/// Run-length encodes `seq`. Every symbol must belong to `alphabet`.
RunSequence rle_encode(std::span<const Symbol> seq, const Alphabet& alphabet);

/// Run-length encodes `seq` without an alphabet membership check.
RunSequence rle_encode(std::span<const Symbol> seq);

/// Expands runs back into symbols. Throws kInvariant on a zero length or on
/// two adjacent runs sharing a symbol.
SymbolSequence rle_decode(std::span<const Run> runs);

/// Encoding of the first `n` symbols of `seq`; its size is the number of
/// runs touched by that prefix.
RunSequence encode_prefix_runs(std::span<const Symbol> seq, std::size_t n);

/// Throws kInvariant unless `runs` is a valid encoded sequence.
void validate_runs(std::span<const Run> runs);

/// Sum of run lengths.
std::uint64_t decoded_length(std::span<const Run> runs) noexcept;

/// Runs known to be maximal within a finite sample: every run except the
/// last, which may continue past the end of the data.
inline std::span<const Run> complete_runs(std::span<const Run> runs) noexcept {
  return runs.empty() ? runs : runs.first(runs.size() - 1);
}

}  // namespace rlematch
