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


#include "rlematch/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "rlematch/error.hpp"

namespace rlematch {
namespace {

void require_open_unit(double v, std::string_view name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorCode::kDomain,
                fmt::format("{} = {} must lie in (0, 1)", name, v));
  }
}

EntropyEstimate closed_form(double value) {
  EntropyEstimate e;
  e.value = value;
  e.kind = EntropyKind::kClosedForm;
  e.diagnostics.limit_exists = true;
  return e;
}

EntropyEstimate from_perron(const PerronResult& perron, EntropyKind kind) {
  if (!(perron.root > 0.0) || !std::isfinite(perron.root)) {
    throw Error(ErrorCode::kNumerical,
                fmt::format("degenerate Perron root {} after {} iterations",
                            perron.root, perron.iterations));
  }
  EntropyEstimate e;
  e.value = -std::log(perron.root);
  e.kind = kind;
  e.diagnostics.iterations = perron.iterations;
  e.diagnostics.limit_exists = true;
  return e;
}

// log of n (n-1) ... (n-k+1)
double log_falling(std::uint64_t n, int k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(n) - k + 1.0);
}

}  // namespace

std::string_view to_string(EntropyKind kind) noexcept {
  switch (kind) {
    case EntropyKind::kClosedForm: return "closed_form";
    case EntropyKind::kEigenvalue: return "eigenvalue";
    case EntropyKind::kTruncatedOracle: return "truncated_oracle";
    case EntropyKind::kPlugin: return "plugin";
  }
  return "unknown";
}

EntropyEstimate h2_rle_bernoulli(double p) {
  require_open_unit(p, "p");
  return closed_form(-0.5 * std::log(p * (1.0 - p) / ((1.0 + p) * (2.0 - p))));
}

EntropyEstimate h2_rle_markov2(double p, double q) {
  require_open_unit(p, "p");
  require_open_unit(q, "q");
  return closed_form(
      -0.5 * std::log((1.0 - p) * (1.0 - q) / ((1.0 + p) * (1.0 + q))));
}

EncodedChainModel::EncodedChainModel(MarkovSpec base) : base_(std::move(base)) {
  const auto n = static_cast<Eigen::Index>(base_.size());
  if (n < 2) {
    throw Error(ErrorCode::kDomain, "the encoded chain needs at least two states");
  }
  if (!base_.interior()) {
    throw Error(ErrorCode::kDomain,
                "every transition probability must lie strictly inside (0, 1)");
  }
  const auto& p = base_.transition;
  reduced_ = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double c = p(i, j) * (1.0 - p(j, j)) / (1.0 - p(i, i));
      reduced_(i, j) = c * c / (1.0 - p(j, j) * p(j, j));
    }
  }
  for (std::size_t i = 0; i < states(); ++i) {
    const double row = kernel_row_sum(i);
    if (std::abs(row - 1.0) > 1e-10) {
      throw Error(ErrorCode::kNumerical,
                  fmt::format("kernel row {} sums to {:.17g}", i, row));
    }
  }
}

double EncodedChainModel::kernel(std::size_t i, std::uint64_t k, std::size_t j,
                                 std::uint64_t l) const {
  if (i >= states() || j >= states() || k == 0 || l == 0) {
    throw Error(ErrorCode::kRange, "kernel index out of range");
  }
  if (i == j) return 0.0;
  const auto& p = base_.transition;
  return p(i, j) * std::pow(p(j, j), static_cast<double>(l - 1)) *
         (1.0 - p(j, j)) / (1.0 - p(i, i));
}

double EncodedChainModel::initial(std::size_t i, std::uint64_t k) const {
  if (i >= states() || k == 0) {
    throw Error(ErrorCode::kRange, "initial-law index out of range");
  }
  const double pii = base_.transition(i, i);
  return base_.stationary(i) * std::pow(pii, static_cast<double>(k - 1)) *
         (1.0 - pii);
}

double EncodedChainModel::kernel_row_sum(std::size_t i) const {
  const auto& p = base_.transition;
  double total = 0.0;
  for (std::size_t j = 0; j < states(); ++j) {
    if (j == i) continue;
    // sum_{l >= 1} p_jj^(l-1) = 1 / (1 - p_jj)
    total += p(i, j) * (1.0 - p(j, j)) / (1.0 - p(i, i)) / (1.0 - p(j, j));
  }
  return total;
}

double EncodedChainModel::initial_mass() const {
  double total = 0.0;
  for (std::size_t i = 0; i < states(); ++i) {
    const double pii = base_.transition(i, i);
    total += base_.stationary(i) * (1.0 - pii) / (1.0 - pii);
  }
  return total;
}

EncodedChainModel build_encoded_chain(const MarkovSpec& spec) {
  return EncodedChainModel(spec);
}

PerronResult perron_root(const Eigen::MatrixXd& a, double tolerance,
                         std::uint64_t max_iterations) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) {
    throw Error(ErrorCode::kValidation, "Perron root needs a non-empty square matrix");
  }
  if ((a.array() < 0.0).any()) {
    throw Error(ErrorCode::kValidation, "Perron root needs a nonnegative matrix");
  }
  const double shift = a.rowwise().sum().mean();
  if (shift == 0.0) {
    throw Error(ErrorCode::kNumerical, "matrix is zero; no positive Perron root");
  }

  PerronResult result;
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::uint64_t it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd av = a * v;
    const double rayleigh = v.dot(av) / v.squaredNorm();
    Eigen::VectorXd next = av + shift * v;
    next /= next.lpNorm<1>();
    v = std::move(next);
    if (std::abs(rayleigh - previous) < tolerance) {
      result.root = rayleigh;
      result.iterations = it;
      result.vector = std::move(v);
      return result;
    }
    previous = rayleigh;
  }
  throw Error(ErrorCode::kNumerical,
              fmt::format("power iteration did not converge in {} iterations "
                          "(last estimate {:.17g})",
                          max_iterations, previous));
}

EntropyEstimate h2_rle_markovN(const MarkovSpec& spec) {
  const auto model = build_encoded_chain(spec);
  return from_perron(perron_root(model.reduced()), EntropyKind::kEigenvalue);
}

EntropyEstimate q2_truncated_eigen(const MarkovSpec& spec, std::size_t cap) {
  if (cap == 0) {
    throw Error(ErrorCode::kValidation, "truncation cap must be at least 1");
  }
  const auto model = build_encoded_chain(spec);
  const std::size_t n = model.states();
  const auto dim = static_cast<Eigen::Index>(n * cap);
  Eigen::MatrixXd q2 = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t l = 1; l <= cap; ++l) {
        const double q = model.kernel(i, 1, j, l);
        for (std::size_t k = 1; k <= cap; ++k) {
          q2(static_cast<Eigen::Index>(i * cap + k - 1),
             static_cast<Eigen::Index>(j * cap + l - 1)) = q * q;
        }
      }
    }
  }
  auto e = from_perron(perron_root(q2), EntropyKind::kTruncatedOracle);
  e.diagnostics.cap = cap;
  return e;
}

double bernoulli_cylinder_power_sum(double p, std::size_t m, int order) {
  require_open_unit(p, "p");
  if (order < 2) {
    throw Error(ErrorCode::kDomain, "order must be at least 2");
  }
  if (m < 2 || m % 2 != 0) {
    throw Error(ErrorCode::kUnsupported,
                fmt::format("cylinder length m = {} must be even and >= 2", m));
  }
  const double k = order;
  const double a = std::pow(p, k);
  const double b = std::pow(1.0 - p, k);
  const double half = static_cast<double>(m / 2);
  return (a + b) * std::pow(a / (1.0 - a), half) * std::pow(b / (1.0 - b), half);
}

double bernoulli_cylinder_sum_exact(double p, std::size_t m) {
  return bernoulli_cylinder_power_sum(p, m, 2);
}

EntropyEstimate renyi_plugin_estimate(std::span<const RunSequence> prefixes,
                                      std::size_t m, int order) {
  if (order < 2) {
    throw Error(ErrorCode::kValidation, "order must be at least 2");
  }
  if (m == 0) {
    throw Error(ErrorCode::kValidation, "block length m must be at least 1");
  }
  const std::size_t t = prefixes.size();
  if (t < std::max<std::size_t>(2, static_cast<std::size_t>(order))) {
    throw Error(ErrorCode::kValidation,
                fmt::format("{} samples are too few for order {}", t, order));
  }
  for (std::size_t s = 0; s < t; ++s) {
    if (prefixes[s].size() < m) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("sample {} has {} runs, {} required", s,
                              prefixes[s].size(), m));
    }
  }

  std::vector<std::size_t> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  const auto block_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(prefixes[a].begin(), prefixes[a].begin() + m,
                                        prefixes[b].begin(), prefixes[b].begin() + m);
  };
  std::sort(idx.begin(), idx.end(), block_less);

  const double log_total = log_falling(t, order);
  double frequency = 0.0;
  double collisions = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  const auto td = static_cast<double>(t);
  for (std::size_t g = 0; g < t;) {
    std::size_t h = g + 1;
    while (h < t && !block_less(idx[g], idx[h])) ++h;
    const std::uint64_t c = h - g;
    if (c >= static_cast<std::uint64_t>(order)) {
      frequency += std::exp(log_falling(c, order) - log_total);
      collisions += std::exp(log_falling(c, order));
    }
    const double share = static_cast<double>(c) / td;
    s2 += share * share;
    s3 += share * share * share;
    g = h;
  }
  if (frequency == 0.0) {
    throw Error(ErrorCode::kEstimate,
                fmt::format("no {}-fold coincidences among {} samples at m = {}; "
                            "the estimate is infinite, use more samples or a "
                            "smaller m",
                            order, t, m));
  }

  EntropyEstimate e;
  e.kind = EntropyKind::kPlugin;
  e.order = order;
  e.value = -std::log(frequency) / (static_cast<double>(order - 1) * static_cast<double>(m));
  if (e.value == 0.0) e.value = 0.0;  // normalize -0
  e.diagnostics.samples = t;
  e.diagnostics.block_length = m;
  e.diagnostics.collisions = static_cast<std::uint64_t>(std::llround(collisions));
  e.diagnostics.collision_frequency = frequency;
  if (order == 2) {
    // Hoeffding variance of the order-2 U-statistic with indicator kernel.
    const double var = 4.0 * (td - 2.0) / (td * (td - 1.0)) * (s3 - s2 * s2) +
                       2.0 / (td * (td - 1.0)) * (s2 - s2 * s2);
    e.diagnostics.standard_error = std::sqrt(std::max(var, 0.0));
  }
  return e;
}

}  // namespace rlematch
