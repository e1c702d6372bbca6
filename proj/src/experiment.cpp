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


#include "rlematch/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "rlematch/codec.hpp"
#include "rlematch/io.hpp"
#include "rlematch/match.hpp"

namespace rlematch {
namespace {

GridPointStats summarize(std::uint64_t n, std::vector<std::uint64_t> values) {
  GridPointStats s;
  s.n = n;
  const auto count = static_cast<double>(values.size());
  double sum = 0.0;
  for (auto v : values) sum += static_cast<double>(v);
  s.mean = sum / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (auto v : values) {
      const double d = static_cast<double>(v) - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / (count - 1.0));
  }
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1
                 ? static_cast<double>(sorted[mid])
                 : 0.5 * static_cast<double>(sorted[mid - 1] + sorted[mid]);
  s.values = std::move(values);
  return s;
}

void finish(ExperimentReport& report) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : report.points) {
    pts.emplace_back(std::log(static_cast<double>(p.n)), p.median);
  }
  if (pts.size() >= 2) {
    const auto fit = fit_slope(pts);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
  }
  report.relative_deviation = std::abs(report.slope - report.target) / report.target;
  report.within_tolerance = report.relative_deviation <= report.config.tolerance;
}

}  // namespace

std::string_view to_string(EntropyMethod method) noexcept {
  switch (method) {
    case EntropyMethod::kAuto: return "auto";
    case EntropyMethod::kClosed: return "closed";
    case EntropyMethod::kEigen: return "eigen";
    case EntropyMethod::kTruncated: return "truncated";
  }
  return "unknown";
}

EntropyMethod parse_entropy_method(std::string_view name) {
  if (name == "auto") return EntropyMethod::kAuto;
  if (name == "closed") return EntropyMethod::kClosed;
  if (name == "eigen") return EntropyMethod::kEigen;
  if (name == "truncated") return EntropyMethod::kTruncated;
  throw Error(ErrorCode::kValidation,
              fmt::format("unknown entropy method '{}'", name));
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw Error(ErrorCode::kValidation, fmt::format("unknown report format '{}'", name));
}

void validate(const ExperimentConfig& config) {
  if (config.n_grid.empty()) {
    throw Error(ErrorCode::kValidation, "n_grid is empty");
  }
  for (std::size_t k = 0; k < config.n_grid.size(); ++k) {
    if (config.n_grid[k] < 2) {
      throw Error(ErrorCode::kValidation,
                  fmt::format("n_grid entry {} must be at least 2", config.n_grid[k]));
    }
    if (k > 0 && config.n_grid[k] <= config.n_grid[k - 1]) {
      throw Error(ErrorCode::kValidation, "n_grid must be strictly increasing");
    }
  }
  if (config.trials < 1) {
    throw Error(ErrorCode::kValidation, "trials must be at least 1");
  }
  if (config.threads < 1) {
    throw Error(ErrorCode::kValidation, "threads must be at least 1");
  }
  if (!(config.tolerance > 0.0)) {
    throw Error(ErrorCode::kValidation, "tolerance must be positive");
  }
}

LinearFit fit_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kValidation, "a slope fit needs at least two points");
  }
  const auto n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::kValidation,
                "slope fit needs at least two distinct abscissae");
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

EntropyEstimate source_entropy(const Source& source, EntropyMethod method,
                               std::size_t truncation_cap) {
  const auto* bern = std::get_if<BernoulliSpec>(&source);
  const bool binary = source_alphabet(source).size() == 2;
  if (method == EntropyMethod::kAuto) {
    method = binary ? EntropyMethod::kClosed : EntropyMethod::kEigen;
  }
  switch (method) {
    case EntropyMethod::kClosed:
      if (!binary) {
        throw Error(ErrorCode::kUnsupported,
                    "closed forms exist only for two-symbol sources");
      }
      if (bern != nullptr) return h2_rle_bernoulli(bern->probabilities[0]);
      {
        const auto& m = std::get<MarkovSpec>(source);
        return h2_rle_markov2(m.transition(0, 0), m.transition(1, 1));
      }
    case EntropyMethod::kEigen:
      return h2_rle_markovN(as_markov(source));
    case EntropyMethod::kTruncated:
      return q2_truncated_eigen(as_markov(source), truncation_cap);
    case EntropyMethod::kAuto:
      break;
  }
  throw Error(ErrorCode::kValidation, "unhandled entropy method");
}

std::uint64_t sample_m_rle(const Source& source, std::uint64_t n,
                           std::uint64_t seed, std::uint64_t trial,
                           std::uint64_t max_raw_length) {
  SymbolSequence x;
  SymbolSequence y;
  SourceSampler sx(source, seed, 2 * trial);
  SourceSampler sy(source, seed, 2 * trial + 1);
  extend_until_runs(sx, x, n, max_raw_length);
  extend_until_runs(sy, y, n, max_raw_length);
  return m_rle_runs(rle_encode(x), rle_encode(y), n).length;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();
  hypothesis_a_certificate(config.source);

  ExperimentReport report;
  report.config = config;
  report.entropy = source_entropy(config.source, config.method, config.truncation_cap);
  report.target = 2.0 / report.entropy.value;

  const std::size_t grid = config.n_grid.size();
  const std::size_t trials = config.trials;
  const std::size_t jobs = grid * trials;
  std::vector<std::uint64_t> values(jobs, 0);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t g = job / trials;
      const std::size_t t = job % trials;
      try {
        values[job] = sample_m_rle(config.source, config.n_grid[g],
                                   derive_seed(config.seed, g), t,
                                   config.max_raw_length);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(config.threads, jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  // Grid points are complete up to the first failing job, in job order, so
  // the outcome does not depend on scheduling.
  std::optional<std::size_t> failed;
  for (std::size_t job = 0; job < jobs; ++job) {
    if (errors[job]) {
      failed = job;
      break;
    }
  }
  const std::size_t complete_points = failed ? *failed / trials : grid;
  for (std::size_t g = 0; g < complete_points; ++g) {
    std::vector<std::uint64_t> v(values.begin() + g * trials,
                                 values.begin() + (g + 1) * trials);
    report.points.push_back(summarize(config.n_grid[g], std::move(v)));
  }
  finish(report);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (failed) {
    try {
      std::rethrow_exception(errors[*failed]);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kResource) {
        throw PartialReportError(
            fmt::format("{} (completed {} of {} grid points)", e.what(),
                        complete_points, grid),
            std::move(report));
      }
      throw;
    }
  }
  return report;
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
  using io::format12;
  using io::round12;
  const auto& cfg = report.config;
  if (format == ReportFormat::kJson) {
    io::json j;
    j["config"] = {
        {"source", io::source_to_json(cfg.source)},
        {"n_grid", cfg.n_grid},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
        {"method", to_string(cfg.method)},
        {"cap", cfg.truncation_cap},
        {"max_raw_length", cfg.max_raw_length},
    };
    j["entropy"] = {{"value", round12(report.entropy.value)},
                    {"kind", to_string(report.entropy.kind)},
                    {"order", report.entropy.order}};
    io::json points = io::json::array();
    for (const auto& p : report.points) {
      points.push_back({{"n", p.n},
                        {"mean", round12(p.mean)},
                        {"median", round12(p.median)},
                        {"stddev", round12(p.stddev)},
                        {"trials", p.values.size()},
                        {"values", p.values}});
    }
    j["points"] = std::move(points);
    j["target"] = round12(report.target);
    j["slope"] = round12(report.slope);
    j["intercept"] = round12(report.intercept);
    j["relative_deviation"] = round12(report.relative_deviation);
    j["tolerance"] = round12(cfg.tolerance);
    j["within_tolerance"] = report.within_tolerance;
    j["tolerance_note"] =
        "engineering choice; convergence is only logarithmic in n";
    return j.dump(2) + "\n";
  }

  std::string out;
  const auto meta = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("# {}: {}\n", key, value);
  };
  meta("source", io::source_to_json(cfg.source).dump());
  meta("seed", std::to_string(cfg.seed));
  meta("trials", std::to_string(cfg.trials));
  meta("method", std::string(to_string(cfg.method)));
  meta("entropy", format12(report.entropy.value));
  meta("entropy_kind", std::string(to_string(report.entropy.kind)));
  meta("target", format12(report.target));
  meta("slope", format12(report.slope));
  meta("intercept", format12(report.intercept));
  meta("relative_deviation", format12(report.relative_deviation));
  meta("tolerance", format12(cfg.tolerance));
  meta("within_tolerance", report.within_tolerance ? "true" : "false");
  out += "n,mean,median,stddev,trials\n";
  for (const auto& p : report.points) {
    out += fmt::format("{},{},{},{},{}\n", p.n, format12(p.mean), format12(p.median),
                       format12(p.stddev), p.values.size());
  }
  return out;
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& destination) {
  io::write_file(destination, render_report(report, format));
}

}  // namespace rlematch
