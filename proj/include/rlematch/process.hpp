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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "rlematch/codec.hpp"

namespace rlematch {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of stream `stream` under `master`. Distinct streams are
/// statistically independent, so trial k of an experiment draws the same
/// numbers regardless of which thread runs it or in which order.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t stream) noexcept {
  return mix64(mix64(master) ^ mix64(stream + 0x9e3779b97f4a7c15ULL));
}

/// Counter-based generator (SplitMix64). Satisfies
/// UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t seed) noexcept : counter_(seed) {}
  StreamRng(std::uint64_t master, std::uint64_t stream) noexcept
      : counter_(derive_seed(master, stream)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    counter_ += 0x9e3779b97f4a7c15ULL;
    return mix64(counter_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t counter_;
};

/// I.i.d. source with per-symbol probabilities strictly inside (0, 1).
struct BernoulliSpec {
  Alphabet alphabet;
  std::vector<double> probabilities;

  static BernoulliSpec create(Alphabet alphabet,
                              std::vector<double> probabilities);
  /// Two-symbol source {a, b} with P(a) = p.
  static BernoulliSpec binary(double p);
};

/// Finite-state Markov source with row-stochastic transition matrix and its
/// stationary law.
struct MarkovSpec {
  Alphabet alphabet;
  Eigen::MatrixXd transition;
  Eigen::VectorXd stationary;

  static MarkovSpec create(Alphabet alphabet, Eigen::MatrixXd transition);
  /// Two-state chain on {a, b} with p_aa = p, p_bb = q.
  static MarkovSpec two_state(double p, double q);

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(transition.rows());
  }
  /// True when every transition probability lies strictly inside (0, 1).
  bool interior() const noexcept;
};

using Source = std::variant<BernoulliSpec, MarkovSpec>;

/// The i.i.d. source viewed as a Markov chain whose rows all equal the
/// symbol probabilities.
MarkovSpec as_markov(const BernoulliSpec& spec);
MarkovSpec as_markov(const Source& source);
const Alphabet& source_alphabet(const Source& source);

/// Solution of pi P = pi with sum(pi) = 1. Uses an LU solve up to 64 states
/// and power iteration beyond.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition);

/// Draws symbols one at a time. Markov sources start from the stationary law,
/// so the emitted process is stationary.
class SourceSampler {
 public:
  SourceSampler(const Source& source, std::uint64_t seed);
  SourceSampler(const Source& source, std::uint64_t master,
                std::uint64_t stream);

  Symbol next();
  void append(SymbolSequence& out, std::size_t count);

 private:
  static Symbol draw(const std::vector<double>& cumulative, double u);

  StreamRng rng_;
  std::vector<double> initial_;               // cumulative
  std::vector<std::vector<double>> rows_;     // cumulative; empty if i.i.d.
  bool started_ = false;
  Symbol state_ = 0;
};

SymbolSequence generate_bernoulli(const BernoulliSpec& spec, std::size_t n,
                                  std::uint64_t seed);
SymbolSequence generate_markov(const MarkovSpec& spec, std::size_t n,
                               std::uint64_t seed);
SymbolSequence generate(const Source& source, std::size_t n,
                        std::uint64_t seed);

/// Extends `out` with draws from `sampler` until its encoding holds at least
/// `complete` complete runs. Throws kResource once `max_length` symbols would
/// be exceeded.
void extend_until_runs(SourceSampler& sampler, SymbolSequence& out,
                       std::size_t complete, std::size_t max_length);

/// `count` independent encoded prefixes of exactly `m` complete runs each;
/// prefix k uses stream k of `seed`.
std::vector<RunSequence> sample_run_prefixes(const Source& source,
                                             std::size_t m, std::size_t count,
                                             std::uint64_t seed);

/// Constants of the decay bound mu(a...a, length n) <= c exp(-h n).
struct HypothesisACertificate {
  double c = 0.0;
  double h = 0.0;
};

/// Probability that the stationary source emits `n` copies of symbol `a`.
double constant_block_probability(const Source& source, Symbol a,
                                  std::size_t n);

/// Builds (c, h) from the largest self-transition probability and verifies
/// the bound for n = 1..100. Throws kHypothesis when a symbol repeats with
/// probability one.
HypothesisACertificate hypothesis_a_certificate(const Source& source);

}  // namespace rlematch
