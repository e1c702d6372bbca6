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


#include "rlematch/process.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <fmt/format.h>

#include "rlematch/error.hpp"

namespace rlematch {
namespace {

constexpr double kRowSumTolerance = 1e-9;
constexpr double kProbabilitySumTolerance = 1e-12;
constexpr std::size_t kDirectSolveLimit = 64;

std::vector<double> cumulative(const double* p, std::size_t n) {
  std::vector<double> c(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += p[i];
    c[i] = acc;
  }
  return c;
}

std::vector<double> row_cumulative(const Eigen::MatrixXd& m, Eigen::Index r) {
  std::vector<double> row(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = m(r, j);
  return cumulative(row.data(), row.size());
}

}  // namespace

BernoulliSpec BernoulliSpec::create(Alphabet alphabet,
                                    std::vector<double> probabilities) {
  if (alphabet.size() != probabilities.size()) {
    throw Error(ErrorCode::kValidation,
                fmt::format("alphabet has {} symbols but {} probabilities given",
                            alphabet.size(), probabilities.size()));
  }
  if (probabilities.size() < 2) {
    throw Error(ErrorCode::kValidation,
                "a Bernoulli source needs at least two symbols");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("probability {} must lie in (0, 1)", p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    throw Error(ErrorCode::kValidation,
                fmt::format("probabilities sum to {:.17g}, expected 1", total));
  }
  return BernoulliSpec{std::move(alphabet), std::move(probabilities)};
}

BernoulliSpec BernoulliSpec::binary(double p) {
  return create(Alphabet({"a", "b"}), {p, 1.0 - p});
}

MarkovSpec MarkovSpec::create(Alphabet alphabet, Eigen::MatrixXd transition) {
  if (transition.rows() != transition.cols()) {
    throw Error(ErrorCode::kValidation,
                fmt::format("transition matrix is {}x{}, expected square",
                            transition.rows(), transition.cols()));
  }
  if (static_cast<std::size_t>(transition.rows()) != alphabet.size()) {
    throw Error(ErrorCode::kValidation,
                fmt::format("alphabet has {} symbols but the transition matrix "
                            "has {} rows",
                            alphabet.size(), transition.rows()));
  }
  if (alphabet.empty()) {
    throw Error(ErrorCode::kValidation, "empty alphabet");
  }
  auto stationary = stationary_distribution(transition);
  return MarkovSpec{std::move(alphabet), std::move(transition),
                    std::move(stationary)};
}

MarkovSpec MarkovSpec::two_state(double p, double q) {
  Eigen::MatrixXd t(2, 2);
  t << p, 1.0 - p, 1.0 - q, q;
  return create(Alphabet({"a", "b"}), std::move(t));
}

bool MarkovSpec::interior() const noexcept {
  return (transition.array() > 0.0).all() && (transition.array() < 1.0).all();
}

MarkovSpec as_markov(const BernoulliSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.probabilities.size());
  Eigen::MatrixXd t(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = spec.probabilities[j];
  }
  return MarkovSpec::create(spec.alphabet, std::move(t));
}

MarkovSpec as_markov(const Source& source) {
  if (const auto* m = std::get_if<MarkovSpec>(&source)) return *m;
  return as_markov(std::get<BernoulliSpec>(source));
}

const Alphabet& source_alphabet(const Source& source) {
  return std::visit([](const auto& s) -> const Alphabet& { return s.alphabet; },
                    source);
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition) {
  const Eigen::Index n = transition.rows();
  if (n == 0 || transition.cols() != n) {
    throw Error(ErrorCode::kValidation, "transition matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = transition(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kValidation,
                    fmt::format("transition entry ({}, {}) = {} outside [0, 1]",
                                i, j, v));
      }
    }
    const double row = transition.row(i).sum();
    if (std::abs(row - 1.0) > kRowSumTolerance) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("row {} sums to {:.17g}, expected 1", i, row));
    }
  }

  Eigen::VectorXd pi(n);
  if (static_cast<std::size_t>(n) <= kDirectSolveLimit) {
    // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a = transition.transpose() - Eigen::MatrixXd::Identity(n, n);
    a.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::kNumerical,
                  "stationary distribution is not unique (chain is reducible)");
    }
    pi = lu.solve(b);
  } else {
    // Lazy chain (P + I) / 2 shares the stationary law and is aperiodic.
    pi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    bool converged = false;
    for (int it = 0; it < 1'000'000; ++it) {
      Eigen::VectorXd next = 0.5 * (transition.transpose() * pi + pi);
      next /= next.sum();
      const double delta = (next - pi).lpNorm<1>();
      pi = std::move(next);
      if (delta < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw Error(ErrorCode::kNumerical,
                  "power iteration for the stationary distribution did not converge");
    }
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    if (pi(i) < -1e-12) {
      throw Error(ErrorCode::kNumerical,
                  "stationary solve produced a negative component");
    }
    pi(i) = std::max(pi(i), 0.0);
  }
  pi /= pi.sum();
  const double residual =
      (transition.transpose() * pi - pi).lpNorm<Eigen::Infinity>();
  if (residual > 1e-10) {
    throw Error(ErrorCode::kNumerical,
                fmt::format("stationary residual {:.3g} exceeds 1e-10", residual));
  }
  return pi;
}

SourceSampler::SourceSampler(const Source& source, std::uint64_t seed)
    : rng_(seed) {
  if (const auto* b = std::get_if<BernoulliSpec>(&source)) {
    initial_ = cumulative(b->probabilities.data(), b->probabilities.size());
  } else {
    const auto& m = std::get<MarkovSpec>(source);
    initial_ = cumulative(m.stationary.data(), m.size());
    rows_.reserve(m.size());
    for (Eigen::Index r = 0; r < m.transition.rows(); ++r) {
      rows_.push_back(row_cumulative(m.transition, r));
    }
  }
}

SourceSampler::SourceSampler(const Source& source, std::uint64_t master,
                             std::uint64_t stream)
    : SourceSampler(source, derive_seed(master, stream)) {}

Symbol SourceSampler::draw(const std::vector<double>& cumulative, double u) {
  // Rounding can leave the last cumulative value a hair below 1; clamp to it.
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
  return static_cast<Symbol>(idx);
}

Symbol SourceSampler::next() {
  const double u = rng_.uniform();
  if (!started_ || rows_.empty()) {
    state_ = draw(initial_, u);
    started_ = true;
  } else {
    state_ = draw(rows_[state_], u);
  }
  return state_;
}

void SourceSampler::append(SymbolSequence& out, std::size_t count) {
  out.reserve(out.size() + count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next());
}

SymbolSequence generate(const Source& source, std::size_t n,
                        std::uint64_t seed) {
  SourceSampler sampler(source, seed);
  SymbolSequence out;
  sampler.append(out, n);
  return out;
}

SymbolSequence generate_bernoulli(const BernoulliSpec& spec, std::size_t n,
                                  std::uint64_t seed) {
  return generate(Source{spec}, n, seed);
}

SymbolSequence generate_markov(const MarkovSpec& spec, std::size_t n,
                               std::uint64_t seed) {
  return generate(Source{spec}, n, seed);
}

void extend_until_runs(SourceSampler& sampler, SymbolSequence& out,
                       std::size_t complete, std::size_t max_length) {
  // A run is complete once a different symbol follows it, so `complete`
  // complete runs need `complete` symbol changes.
  std::size_t changes = 0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] != out[i - 1]) ++changes;
  }
  while (changes < complete) {
    if (out.size() >= max_length) {
      throw Error(ErrorCode::kResource,
                  fmt::format("sequence reached the {}-symbol cap with only {} "
                              "of {} complete runs",
                              max_length, changes, complete));
    }
    const Symbol s = sampler.next();
    if (!out.empty() && out.back() != s) ++changes;
    out.push_back(s);
  }
}

std::vector<RunSequence> sample_run_prefixes(const Source& source,
                                             std::size_t m, std::size_t count,
                                             std::uint64_t seed) {
  std::vector<RunSequence> prefixes;
  prefixes.reserve(count);
  SymbolSequence raw;
  for (std::size_t k = 0; k < count; ++k) {
    SourceSampler sampler(source, seed, k);
    raw.clear();
    extend_until_runs(sampler, raw, m, std::numeric_limits<std::size_t>::max());
    RunSequence runs = rle_encode(raw);
    runs.resize(m);
    prefixes.push_back(std::move(runs));
  }
  return prefixes;
}

double constant_block_probability(const Source& source, Symbol a,
                                  std::size_t n) {
  if (n == 0) return 1.0;
  const auto nd = static_cast<double>(n);
  if (const auto* b = std::get_if<BernoulliSpec>(&source)) {
    return std::pow(b->probabilities.at(a), nd);
  }
  const auto& m = std::get<MarkovSpec>(source);
  if (a >= m.size()) {
    throw Error(ErrorCode::kValidation, fmt::format("symbol {} out of range", a));
  }
  return m.stationary(a) * std::pow(m.transition(a, a), nd - 1.0);
}

HypothesisACertificate hypothesis_a_certificate(const Source& source) {
  // Per-symbol repeat probability r_a and first-symbol weight w_a, so that
  // mu(a^n) = w_a r_a^n.
  std::vector<double> repeat;
  std::vector<double> first;
  if (const auto* b = std::get_if<BernoulliSpec>(&source)) {
    repeat = b->probabilities;
  } else {
    const auto& m = std::get<MarkovSpec>(source);
    for (std::size_t i = 0; i < m.size(); ++i) {
      repeat.push_back(m.transition(i, i));
    }
  }
  const auto& alphabet = source_alphabet(source);
  for (std::size_t i = 0; i < repeat.size(); ++i) {
    if (repeat[i] >= 1.0) {
      throw Error(ErrorCode::kHypothesis,
                  fmt::format("symbol '{}' repeats with probability 1; constant "
                              "blocks do not decay",
                              alphabet.label(static_cast<Symbol>(i))));
    }
  }
  const double max_repeat = *std::max_element(repeat.begin(), repeat.end());

  HypothesisACertificate cert;
  if (std::holds_alternative<BernoulliSpec>(source)) {
    cert.c = 1.0;
    cert.h = -std::log(max_repeat);
  } else if (max_repeat == 0.0) {
    // No symbol ever repeats: only n = 1 carries mass.
    const auto& m = std::get<MarkovSpec>(source);
    cert.h = 1.0;
    cert.c = m.stationary.maxCoeff() * std::exp(1.0);
  } else {
    const auto& m = std::get<MarkovSpec>(source);
    cert.h = -std::log(max_repeat);
    for (std::size_t i = 0; i < repeat.size(); ++i) {
      const double denom = repeat[i] > 0.0 ? repeat[i] : max_repeat;
      cert.c = std::max(cert.c, m.stationary(i) / denom);
    }
  }

  for (std::size_t n = 1; n <= 100; ++n) {
    const double bound = cert.c * std::exp(-cert.h * static_cast<double>(n));
    for (std::size_t a = 0; a < repeat.size(); ++a) {
      const double mass = constant_block_probability(source, static_cast<Symbol>(a), n);
      if (mass > bound * (1.0 + 1e-12)) {
        throw Error(ErrorCode::kNumerical,
                    fmt::format("certificate check failed at n = {} for symbol {}",
                                n, a));
      }
    }
  }
  return cert;
}

}  // namespace rlematch
