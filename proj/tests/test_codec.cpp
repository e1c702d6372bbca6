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


#include <random>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rlematch/codec.hpp"
#include "rlematch/error.hpp"

namespace rlematch {
namespace {

RunSequence runs_of(std::initializer_list<std::pair<char, std::uint64_t>> items,
                    const Alphabet& alphabet) {
  RunSequence out;
  for (auto [c, len] : items) out.push_back(rlematch::Run{alphabet.at(std::string(1, c)), len});
  return out;
}

TEST(Codec, IntroductionString) {
  // The 38-symbol string has an 11-long block of ones.
  const std::string text = "00001110000000011001111111111100000000";
  const Alphabet alphabet({"0", "1"});
  const auto runs = rle_encode(parse_symbols(text, alphabet), alphabet);
  EXPECT_EQ(runs, runs_of({{'0', 4}, {'1', 3}, {'0', 8}, {'1', 2}, {'0', 2},
                           {'1', 11}, {'0', 8}},
                          alphabet));
  EXPECT_EQ(format_symbols(rle_decode(runs), alphabet), text);
}

TEST(Codec, PublishedRunListRoundTrips) {
  const Alphabet alphabet({"0", "1"});
  const auto runs = runs_of(
      {{'0', 4}, {'1', 3}, {'0', 8}, {'1', 2}, {'0', 2}, {'1', 9}, {'0', 8}},
      alphabet);
  const auto decoded = rle_decode(runs);
  EXPECT_EQ(decoded.size(), 36u);
  EXPECT_EQ(rle_encode(decoded, alphabet), runs);
}

TEST(Codec, SingleRun) {
  const Alphabet alphabet({"a"});
  const auto runs = rle_encode(parse_symbols("aaaa", alphabet), alphabet);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0], (rlematch::Run{0, 4}));
  EXPECT_EQ(format_symbols(rle_decode(runs), alphabet), "aaaa");
}

TEST(Codec, AlternatingDoesNotCompress) {
  const Alphabet alphabet({"a", "b"});
  const auto runs = rle_encode(parse_symbols("ababab", alphabet), alphabet);
  ASSERT_EQ(runs.size(), 6u);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    EXPECT_EQ(runs[i], (rlematch::Run{static_cast<Symbol>(i % 2), 1}));
  }
}

TEST(Codec, EmptyInput) {
  EXPECT_TRUE(rle_encode(SymbolSequence{}).empty());
  EXPECT_TRUE(rle_decode(RunSequence{}).empty());
}

TEST(Codec, OutOfAlphabetSymbolRejected) {
  const Alphabet alphabet({"0", "1"});
  try {
    parse_symbols("0120", alphabet);
    FAIL() << "expected a validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
  const SymbolSequence seq{0, 1, 2};
  EXPECT_THROW(rle_encode(seq, alphabet), Error);
}

TEST(Codec, DecodeRejectsBrokenInvariants) {
  const RunSequence zero{{0, 2}, {1, 0}};
  const RunSequence repeated{{0, 2}, {0, 3}};
  for (const auto& bad : {zero, repeated}) {
    try {
      rle_decode(bad);
      FAIL() << "expected an invariant error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvariant);
    }
  }
}

TEST(Codec, PrefixRuns) {
  const Alphabet alphabet({"a", "b"});
  const auto seq = parse_symbols("aaabba", alphabet);
  EXPECT_EQ(encode_prefix_runs(seq, 5), runs_of({{'a', 3}, {'b', 2}}, alphabet));
  EXPECT_TRUE(encode_prefix_runs(seq, 0).empty());
  const auto ab = parse_symbols("ab", alphabet);
  EXPECT_EQ(encode_prefix_runs(ab, 2).size(), 2u);
  try {
    encode_prefix_runs(seq, 7);
    FAIL() << "expected a range error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRange);
  }
}

TEST(Codec, MultiByteSymbols) {
  const auto alphabet = Alphabet::from_text("αβα");
  EXPECT_EQ(alphabet.size(), 2u);
  const auto seq = parse_symbols("ααβ", alphabet);
  EXPECT_EQ(rle_encode(seq, alphabet), (RunSequence{{0, 2}, {1, 1}}));
  EXPECT_THROW(split_utf8("\xff"), Error);
}

TEST(Codec, DuplicateAlphabetLabelRejected) {
  EXPECT_THROW(Alphabet({"a", "a"}), Error);
}

// Randomized: round trip, adjacent distinctness, length conservation, and
// agreement with an independent encoder.
TEST(CodecProperty, RoundTripAndInvariants) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> len(0, 1000);
  std::uniform_int_distribution<Symbol> size(2, 5);
  for (int trial = 0; trial < 10'000; ++trial) {
    const Symbol k = size(rng);
    const auto seq = trial % 2 == 0 ? oracle::random_symbols(rng, len(rng), k)
                                    : oracle::random_runny(rng, len(rng), k, 0.7);
    const auto runs = rle_encode(seq);
    ASSERT_EQ(rle_decode(runs), seq);
    ASSERT_EQ(runs, oracle::encode_runs(seq));
    ASSERT_EQ(decoded_length(runs), seq.size());
    ASSERT_LE(runs.size(), seq.size());
    for (std::size_t i = 1; i < runs.size(); ++i) {
      ASSERT_NE(runs[i].symbol, runs[i - 1].symbol);
    }
  }
}

TEST(CodecProperty, PrefixRunCountMonotone) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto seq = oracle::random_runny(rng, 300, 3, 0.5);
    std::size_t prev = 0;
    for (std::size_t n = 0; n <= seq.size(); ++n) {
      const std::size_t count = encode_prefix_runs(seq, n).size();
      ASSERT_GE(count, prev);
      ASSERT_LE(count, prev + 1);
      prev = count;
    }
  }
}

}  // namespace
}  // namespace rlematch
