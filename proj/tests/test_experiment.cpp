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


#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rlematch/experiment.hpp"
#include "rlematch/io.hpp"
#include "rlematch/match.hpp"

namespace rlematch {
namespace {

ExperimentConfig small_config(unsigned threads = 1) {
  ExperimentConfig c;
  c.source = BernoulliSpec::binary(0.5);
  c.n_grid = {16, 64, 256};
  c.trials = 8;
  c.seed = 42;
  c.threads = threads;
  return c;
}

TEST(FitSlope, ExactLine) {
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < 6; ++k) pts.emplace_back(k, 3.0 * k - 1.5);
  const auto fit = fit_slope(pts);
  EXPECT_NEAR(fit.slope, 3.0, 1e-14);
  EXPECT_NEAR(fit.intercept, -1.5, 1e-14);
  const std::vector<std::pair<double, double>> two{{1.0, 2.0}, {3.0, 8.0}};
  EXPECT_NEAR(fit_slope(two).slope, 3.0, 1e-15);
  EXPECT_THROW(fit_slope(std::vector<std::pair<double, double>>{{1.0, 2.0}}), Error);
  EXPECT_THROW(fit_slope(std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.0, 3.0}}),
               Error);
}

TEST(FitSlope, NoisyLine) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < 20; ++k) {
    const double x = std::log(16.0 * (k + 1));
    pts.emplace_back(x, 2.0 * x + 0.5 + noise(rng));
  }
  EXPECT_NEAR(fit_slope(pts).slope, 2.0, 0.1);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
  const auto a = run_experiment(small_config(1));
  const auto b = run_experiment(small_config(1));
  const auto c = run_experiment(small_config(4));
  for (auto format : {ReportFormat::kCsv, ReportFormat::kJson}) {
    EXPECT_EQ(render_report(a, format), render_report(b, format));
    EXPECT_EQ(render_report(a, format), render_report(c, format));
  }
  auto other = small_config(1);
  other.seed = 43;
  EXPECT_NE(render_report(run_experiment(other), ReportFormat::kJson),
            render_report(a, ReportFormat::kJson));
}

TEST(Experiment, ValuesAreBoundedAndSummarized) {
  const auto r = run_experiment(small_config());
  ASSERT_EQ(r.points.size(), 3u);
  for (const auto& p : r.points) {
    ASSERT_EQ(p.values.size(), 8u);
    for (auto v : p.values) EXPECT_LE(v, p.n);
    double mean = 0.0;
    for (auto v : p.values) mean += static_cast<double>(v);
    EXPECT_NEAR(p.mean, mean / 8.0, 1e-12);
    auto sorted = p.values;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_NEAR(p.median, (sorted[3] + sorted[4]) / 2.0, 1e-12);
  }
  EXPECT_NEAR(r.target, 2.0 / std::log(3.0), 1e-12);
  EXPECT_EQ(r.entropy.kind, EntropyKind::kClosedForm);
}

TEST(Experiment, TrialMatchesDirectComputation) {
  const auto cfg = small_config();
  const auto r = run_experiment(cfg);
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
      const auto n = cfg.n_grid[g];
      SymbolSequence x;
      SymbolSequence y;
      SourceSampler sx(cfg.source, derive_seed(cfg.seed, g), 2 * t);
      SourceSampler sy(cfg.source, derive_seed(cfg.seed, g), 2 * t + 1);
      extend_until_runs(sx, x, n, 1u << 20);
      extend_until_runs(sy, y, n, 1u << 20);
      EXPECT_EQ(r.points[g].values[t], m_rle(x, y, n).length);
    }
  }
}

TEST(Experiment, SymmetricMarkovHasBernoulliTarget) {
  auto cfg = small_config();
  cfg.source = MarkovSpec::two_state(0.5, 0.5);
  const auto r = run_experiment(cfg);
  EXPECT_NEAR(r.target, 2.0 / std::log(3.0), 1e-12);
  cfg.method = EntropyMethod::kEigen;
  EXPECT_NEAR(run_experiment(cfg).target, 2.0 / std::log(3.0), 1e-9);
}

TEST(Experiment, Validation) {
  auto bad = small_config();
  bad.n_grid = {};
  EXPECT_THROW(run_experiment(bad), Error);
  bad = small_config();
  bad.n_grid = {64, 16};
  EXPECT_THROW(run_experiment(bad), Error);
  bad = small_config();
  bad.trials = 0;
  EXPECT_THROW(run_experiment(bad), Error);
  bad = small_config();
  bad.threads = 0;
  EXPECT_THROW(run_experiment(bad), Error);
  bad = small_config();
  bad.source = BernoulliSpec::create(Alphabet({"a", "b", "c"}), {0.2, 0.3, 0.5});
  bad.method = EntropyMethod::kClosed;
  try {
    run_experiment(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
}

TEST(Experiment, ResourceCapYieldsPartialReport) {
  auto cfg = small_config(2);
  cfg.n_grid = {4, 8, 100000};
  cfg.max_raw_length = 5000;
  try {
    run_experiment(cfg);
    FAIL();
  } catch (const PartialReportError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResource);
    EXPECT_EQ(e.partial().points.size(), 2u);
    EXPECT_NE(std::string(e.what()).find("2 of 3"), std::string::npos);
  }
}

TEST(Report, CsvShape) {
  const auto r = run_experiment(small_config());
  const auto csv = render_report(r, ReportFormat::kCsv);
  std::istringstream in(csv);
  std::string line;
  int data = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    if (!header) {
      EXPECT_EQ(line, "n,mean,median,stddev,trials");
      header = true;
      continue;
    }
    ++data;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
  }
  EXPECT_EQ(data, 3);
}

TEST(Report, JsonRoundTripsValues) {
  const auto r = run_experiment(small_config());
  const auto j = nlohmann::json::parse(render_report(r, ReportFormat::kJson));
  EXPECT_EQ(j["points"].size(), 3u);
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_EQ(j["points"][g]["values"].get<std::vector<std::uint64_t>>(),
              r.points[g].values);
    EXPECT_EQ(j["points"][g]["median"].get<double>(), io::round12(r.points[g].median));
  }
  EXPECT_EQ(j["slope"].get<double>(), io::round12(r.slope));
  EXPECT_EQ(j["target"].get<double>(), io::round12(r.target));
  EXPECT_EQ(j["within_tolerance"].get<bool>(), r.within_tolerance);
  EXPECT_FALSE(j.contains("runtime_seconds"));
  const auto cfg = io::config_from_json(j["config"]);
  EXPECT_EQ(cfg.n_grid, r.config.n_grid);
  EXPECT_EQ(cfg.seed, r.config.seed);
}

TEST(Report, EmitWritesFileAndReportsIoErrors) {
  const auto r = run_experiment(small_config());
  const auto path = std::filesystem::temp_directory_path() / "rlematch_report_test.csv";
  emit_report(r, ReportFormat::kCsv, path);
  EXPECT_EQ(io::read_file(path), render_report(r, ReportFormat::kCsv));
  std::filesystem::remove(path);
  try {
    emit_report(r, ReportFormat::kCsv, "/nonexistent-dir/x/report.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  EXPECT_THROW(parse_report_format("xml"), Error);
}

}  // namespace
}  // namespace rlematch
