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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rlematch/entropy.hpp"
#include "rlematch/error.hpp"
#include "rlematch/process.hpp"

namespace rlematch {

/// How the target entropy of an experiment is obtained. kAuto picks the
/// closed form for two-symbol sources and the eigenvalue route otherwise.
enum class EntropyMethod { kAuto, kClosed, kEigen, kTruncated };

std::string_view to_string(EntropyMethod method) noexcept;
EntropyMethod parse_entropy_method(std::string_view name);

struct ExperimentConfig {
  Source source;
  std::vector<std::uint64_t> n_grid;  // run counts, strictly increasing
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  EntropyMethod method = EntropyMethod::kAuto;
  std::size_t truncation_cap = 200;
  unsigned threads = 1;
  std::uint64_t max_raw_length = std::uint64_t{1} << 30;
  double tolerance = 0.2;  // relative slope tolerance
};

void validate(const ExperimentConfig& config);

struct GridPointStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for one trial
  std::vector<std::uint64_t> values;  // M_n^RLE per trial, by trial index
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<GridPointStats> points;
  EntropyEstimate entropy;
  double target = 0.0;  // 2 / H_2
  double slope = 0.0;
  double intercept = 0.0;
  double relative_deviation = 0.0;
  bool within_tolerance = false;
  double runtime_seconds = 0.0;  // not serialized
};

/// Thrown when a resource cap stops the run; carries the grid points that
/// did finish.
class PartialReportError : public Error {
 public:
  PartialReportError(const std::string& message, ExperimentReport partial)
      : Error(ErrorCode::kResource, message), partial_(std::move(partial)) {}

  const ExperimentReport& partial() const noexcept { return partial_; }

 private:
  ExperimentReport partial_;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares of y on x.
LinearFit fit_slope(std::span<const std::pair<double, double>> points);

/// Order-2 entropy of the encoded source using `method`.
EntropyEstimate source_entropy(const Source& source, EntropyMethod method,
                               std::size_t truncation_cap = 200);

/// M_n^RLE for one independent pair of realizations. Streams 2t and 2t+1 of
/// `seed` generate x and y.
std::uint64_t sample_m_rle(const Source& source, std::uint64_t n,
                           std::uint64_t seed, std::uint64_t trial,
                           std::uint64_t max_raw_length);

/// Monte Carlo estimate of the growth rate of M_n^RLE against log n.
ExperimentReport run_experiment(const ExperimentConfig& config);

enum class ReportFormat { kCsv, kJson };

ReportFormat parse_report_format(std::string_view name);

/// Serialized report. Deterministic for a given report; runtime is omitted.
std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Writes render_report to `destination`. Throws kIo naming the path.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& destination);

}  // namespace rlematch
