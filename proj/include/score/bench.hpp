// Copyright 2026 The SCore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment harness: configuration, replicated runs, sweeps and the
// brute-force verification suite.

#ifndef SCORE_BENCH_HPP_
#define SCORE_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "score/adversary.hpp"
#include "score/hypersimplex.hpp"
#include "score/policy.hpp"

namespace score {

inline constexpr const char* kConfigSchema = "score-bench/1";

enum class PolicyKind { kScore, kOftrl, kSemibandit, kPriced };

enum class CoreKind {
  kAuto,              // weights for modular, random marginal for coverage,
                      // assignment duals for matching
  kMarginal,          // marginal vector along a fresh random permutation
  kMarginalIdentity,  // marginal vector along 0, 1, ..., n-1
  kShapleyMc,
  kDictator,
  kMatchingDual,
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::kScore;
  std::optional<double> eta;
  std::optional<double> epsilon;
  std::optional<double> sigma;
  double cost = 1.0;
  ProjectionMode mode = ProjectionMode::kExact;
  int afw_max_iters = 0;
  bool shadow_exact = false;
  CoreKind core = CoreKind::kAuto;
  int shapley_samples = 64;
  // Track sum_t Distance(f_t, h_t)^2 for the optimistic policy.
  bool distance = true;
};

struct ExperimentConfig {
  int n = 0;
  int k = 0;
  long T = 0;
  double alpha = 1.0;
  // Defaults: the adversary's value bound, and alpha M sqrt(2).
  std::optional<double> M;
  std::optional<double> G;
  uint64_t seed = 0;
  int replicas = 1;
  // Directory for replica CSVs and summary.json; empty disables output.
  std::string output;
  // Worker threads for replicas; 0 uses the hardware concurrency.
  int threads = 0;
  PolicySpec policy;
  AdversarySpec adversary;
  std::optional<HintSpec> hint;
};

// Parses and validates a config. The "schema" key must equal kConfigSchema
// and unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

struct CsvRow {
  long round = 0;
  double reward = 0.0;
  double full_reward = 0.0;
  double cum_reward = 0.0;
  double cum_benchmark = 0.0;
  double aug_regret = 0.0;
  double static_regret = 0.0;
  bool observed = true;
  double cum_cost = 0.0;
};

std::string csv_header();
std::string csv_line(const CsvRow& row);
// Shortest representation that round-trips.
std::string format_double(double x);

struct ReplicaResult {
  int replica = 0;
  uint64_t seed = 0;
  double aug_regret = 0.0;
  double static_regret = 0.0;
  double cost = 0.0;
  double cum_reward = 0.0;
  double benchmark = 0.0;
  long observed_rounds = 0;
  // Optimistic policy only.
  double sum_sq_distance = 0.0;
  long afw_iterations = 0;
  long afw_capped_rounds = 0;
  double max_shadow_distance = -1.0;
  std::vector<CsvRow> rows;
};

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_mean = 0.0;
};

Stat summarize(std::span<const double> xs);

struct BoundCheck {
  std::string name;
  std::string metric;
  double mean_bound = 0.0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
};

struct RunSummary {
  ExperimentConfig config;
  double M = 0.0;
  double G = 0.0;
  double eta = 0.0;
  double epsilon = 1.0;
  std::vector<std::string> warnings;
  std::vector<ReplicaResult> replicas;
  Stat aug_regret;
  Stat static_regret;
  Stat cost;
  // static regret plus cost
  Stat total;
  std::vector<BoundCheck> bounds;

  nlohmann::json to_json() const;
};

// One replica, seeded by derive_seed(cfg.seed, replica). Streams CSV rows to
// cfg.output when set; keeps them in memory when keep_rows is true.
ReplicaResult run_replica(const ExperimentConfig& cfg, int replica, bool keep_rows = false);

// All replicas, concurrently; results are ordered by replica index.
RunSummary run(const ExperimentConfig& cfg, bool keep_rows = false);

struct SweepResult {
  std::string axis;
  std::vector<double> values;
  std::vector<RunSummary> runs;
  // Least-squares slopes of log(mean metric) against log(value).
  double slope_aug = 0.0;
  double slope_static = 0.0;
  double slope_total = 0.0;

  std::string to_csv() const;
};

// axis is one of T, k, noise_l2, epsilon, cost.
SweepResult sweep(const ExperimentConfig& base, const std::string& axis,
                  const std::vector<double>& values);

double loglog_slope(std::span<const double> x, std::span<const double> y);

struct LowerBoundResult {
  std::vector<double> regrets;
  Stat stat;
  // mean / standard error
  double z = 0.0;
};

// SCore against the one-hot ensemble.
LowerBoundResult lower_bound(int n, int k, long T, int replicas, uint64_t seed);

using Projector = std::function<HypersimplexPoint(std::span<const double>, int)>;

struct VerifyOptions {
  int max_n = 12;
  uint64_t seed = 2026;
  // Projection under test; defaults to euclidean_project.
  Projector projector;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  long instances = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

VerifyReport verify(const VerifyOptions& options = {});

}  // namespace score

#endif  // SCORE_BENCH_HPP_
