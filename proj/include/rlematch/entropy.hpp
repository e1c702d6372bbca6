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
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "rlematch/codec.hpp"
#include "rlematch/process.hpp"

namespace rlematch {

enum class EntropyKind { kClosedForm, kEigenvalue, kTruncatedOracle, kPlugin };

std::string_view to_string(EntropyKind kind) noexcept;

/// Method-specific bookkeeping. Only the fields that apply are set.
struct EntropyDiagnostics {
  std::optional<std::uint64_t> iterations;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> block_length;  // m for plug-in estimates
  std::optional<std::uint64_t> collisions;
  std::optional<double> collision_frequency;
  std::optional<double> standard_error;       // of collision_frequency
  // True when the entropy is a genuine limit, so the lower and upper
  // entropies coincide. Unset for finite-sample estimates.
  std::optional<bool> limit_exists;
};

/// Renyi entropy value in nats.
struct EntropyEstimate {
  double value = 0.0;
  EntropyKind kind = EntropyKind::kClosedForm;
  int order = 2;
  EntropyDiagnostics diagnostics;
};

/// Order-2 entropy of the encoded Bernoulli(p) process:
/// -1/2 log( p(1-p) / ((1+p)(2-p)) ).
EntropyEstimate h2_rle_bernoulli(double p);

/// Order-2 entropy of the encoded two-state chain with p_aa = p, p_bb = q:
/// -1/2 log( (1-p)(1-q) / ((1+p)(1+q)) ).
EntropyEstimate h2_rle_markov2(double p, double q);

/// The encoded process of a Markov source, itself a Markov chain on the
/// countable alphabet of (symbol, run length) pairs.
///
/// The kernel q((i,k) -> (j,l)) = p_ij p_jj^(l-1) (1 - p_jj) / (1 - p_ii)
/// does not depend on the incoming length k, so Q_2 (entrywise square of the
/// kernel) maps vectors constant in k to vectors constant in k. Summing the
/// squared kernel over l gives the N x N matrix
///   R_ij = [p_ij (1 - p_jj) / (1 - p_ii)]^2 / (1 - p_jj^2),  R_ii = 0,
/// which shares its Perron root with Q_2.
class EncodedChainModel {
 public:
  explicit EncodedChainModel(MarkovSpec base);

  const MarkovSpec& base() const noexcept { return base_; }
  std::size_t states() const noexcept { return base_.size(); }

  /// q((i,k) -> (j,l)); lengths start at 1.
  double kernel(std::size_t i, std::uint64_t k, std::size_t j,
                std::uint64_t l) const;
  /// pi((i,k)) = mu_i p_ii^(k-1) (1 - p_ii).
  double initial(std::size_t i, std::uint64_t k) const;
  /// Sum of kernel row (i, .) over all (j, l), via the geometric series.
  double kernel_row_sum(std::size_t i) const;
  /// Total initial mass, via the geometric series.
  double initial_mass() const;

  const Eigen::MatrixXd& reduced() const noexcept { return reduced_; }

 private:
  MarkovSpec base_;
  Eigen::MatrixXd reduced_;
};

/// Requires every p_ij strictly inside (0, 1); throws kDomain otherwise.
EncodedChainModel build_encoded_chain(const MarkovSpec& spec);

struct PerronResult {
  double root = 0.0;
  std::uint64_t iterations = 0;
  Eigen::VectorXd vector;
};

/// Perron root of a nonnegative irreducible matrix by power iteration on
/// A + sI (s = mean row sum), which is primitive even when A is periodic.
/// Stops once successive Rayleigh quotients differ by less than `tolerance`.
PerronResult perron_root(const Eigen::MatrixXd& a, double tolerance = 1e-13,
                         std::uint64_t max_iterations = 100'000);

/// -log of the Perron root of the reduced matrix R.
EntropyEstimate h2_rle_markovN(const MarkovSpec& spec);

/// -log of the Perron root of Q_2 truncated to run lengths <= cap, an
/// (N cap) x (N cap) matrix. Decreases toward h2_rle_markovN as cap grows.
EntropyEstimate q2_truncated_eigen(const MarkovSpec& spec, std::size_t cap);

/// Exact sum over encoded cylinders C of length m of P(C)^order for the
/// Bernoulli(p) source, m even.
double bernoulli_cylinder_power_sum(double p, std::size_t m, int order);

/// Order-2 case of bernoulli_cylinder_power_sum.
double bernoulli_cylinder_sum_exact(double p, std::size_t m);

/// Collision (U-statistic) estimate of the order-k entropy from independent
/// encoded prefixes: the fraction of ordered k-tuples of distinct samples
/// whose first m runs coincide estimates sum_C P(C)^k.
EntropyEstimate renyi_plugin_estimate(std::span<const RunSequence> prefixes,
                                      std::size_t m, int order = 2);

}  // namespace rlematch
