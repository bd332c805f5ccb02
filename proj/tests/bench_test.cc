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


#include "score/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace score {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("score_bench_test_" + name);
  fs::remove_all(p);
  return p;
}

nlohmann::json minimal_config() {
  return {{"schema", kConfigSchema},
          {"n", 6},
          {"k", 2},
          {"T", 50},
          {"seed", 3},
          {"replicas", 2},
          {"policy", {{"kind", "score"}}},
          {"adversary", {{"kind", "modular-random"}}}};
}

TEST(Config, ParsesAndRoundTrips) {
  const ExperimentConfig c = config_from_json(minimal_config());
  EXPECT_EQ(c.n, 6);
  EXPECT_EQ(c.k, 2);
  EXPECT_EQ(c.T, 50);
  EXPECT_EQ(c.replicas, 2);
  const ExperimentConfig r = config_from_json(to_json(c));
  EXPECT_EQ(to_json(r), to_json(c));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  auto bad = [](auto edit) {
    nlohmann::json j = minimal_config();
    edit(j);
    return j;
  };
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["colour"] = "red"; })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j.erase("schema"); })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["schema"] = "score-bench/0"; })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["k"] = 7; })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["replicas"] = 0; })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["T"] = 2.5; })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["policy"]["epsilon"] = 1.5; })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["policy"]["speed"] = 1; })), InputError);
  EXPECT_THROW(config_from_json(bad([](auto& j) { j["adversary"]["kind"] = "adaptive"; })), InputError);
}

TEST(Csv, HeaderAndFormatting) {
  EXPECT_EQ(csv_header(),
            "round,reward,full_reward,cum_reward,cum_benchmark,aug_regret,static_regret,observed,cum_cost");
  EXPECT_EQ(csv_line(CsvRow{3, 0.5, 1.0, 1.5, 1.25, -0.25, 0.1, false, 2.0}),
            "3,0.5,1,1.5,1.25,-0.25,0.1,0,2");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Run, ReplicaFilesAreReproducible) {
  ExperimentConfig c = config_from_json(minimal_config());
  c.output = scratch("a").string();
  const RunSummary s = run(c);
  c.output = scratch("b").string();
  run(c);
  for (int r = 0; r < 2; ++r) {
    const std::string name = "replica_" + std::to_string(r) + ".csv";
    const std::string a = slurp(fs::path(scratch("").string() + "a") / name);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(fs::path(scratch("").string() + "b") / name));
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), c.T + 1);
    EXPECT_EQ(a.find('\r'), std::string::npos);
  }
  EXPECT_NE(slurp(fs::path(c.output) / "replica_0.csv"), slurp(fs::path(c.output) / "replica_1.csv"));
  EXPECT_TRUE(fs::exists(fs::path(c.output) / "summary.json"));
  EXPECT_EQ(s.replicas.size(), 2u);
}

TEST(Run, ThreadCountDoesNotChangeResults) {
  ExperimentConfig c = config_from_json(minimal_config());
  c.replicas = 5;
  c.threads = 1;
  const RunSummary a = run(c);
  c.threads = 4;
  const RunSummary b = run(c);
  for (int r = 0; r < 5; ++r) EXPECT_EQ(a.replicas[r].aug_regret, b.replicas[r].aug_regret);
}

TEST(Run, FullSetHasZeroAugmentedRegret) {
  ExperimentConfig c = config_from_json(minimal_config());
  c.k = c.n;
  c.adversary.kind = AdversaryKind::kCoverageDrift;
  const ReplicaResult r = run_replica(c, 0, true);
  ASSERT_EQ(static_cast<long>(r.rows.size()), c.T);
  for (const CsvRow& row : r.rows) EXPECT_NEAR(row.aug_regret, 0.0, 1e-9);
}

TEST(Run, EveryPolicyKindRunsOnEveryAdversary) {
  for (PolicyKind pk : {PolicyKind::kScore, PolicyKind::kOftrl, PolicyKind::kSemibandit, PolicyKind::kPriced}) {
    for (AdversaryKind ak : {AdversaryKind::kOnehot, AdversaryKind::kModularDrift,
                             AdversaryKind::kCoverageDrift, AdversaryKind::kMatchingRandom}) {
      ExperimentConfig c = config_from_json(minimal_config());
      c.policy.kind = pk;
      c.adversary.kind = ak;
      c.hint = HintSpec{HintMode::kAdditiveNoise, 0.2};
      const RunSummary s = run(c);
      EXPECT_EQ(s.replicas.size(), 2u);
      EXPECT_FALSE(s.bounds.empty());
      EXPECT_TRUE(s.to_json().contains("bounds"));
    }
  }
}

TEST(Sweep, SquareRootScalingInHorizon) {
  ExperimentConfig c = config_from_json(minimal_config());
  c.n = 10;
  c.k = 3;
  c.replicas = 50;
  c.G = 1.0;
  c.adversary.kind = AdversaryKind::kOnehot;
  const SweepResult s = sweep(c, "T", {1000, 4000, 16000});
  EXPECT_GE(s.slope_static, 0.4);
  EXPECT_LE(s.slope_static, 0.6);
  EXPECT_NE(s.to_csv().find("T,"), std::string::npos);
}

TEST(Sweep, PerfectHintIsBest) {
  ExperimentConfig c = config_from_json(minimal_config());
  c.n = 8;
  c.k = 3;
  c.T = 1000;
  c.replicas = 4;
  c.policy.kind = PolicyKind::kOftrl;
  c.policy.distance = false;
  c.adversary.kind = AdversaryKind::kCoverageDrift;
  c.hint = HintSpec{HintMode::kAdditiveNoise, 0.0};
  const SweepResult s = sweep(c, "noise_l2", {0.0, 0.25, 1.0, 4.0});
  for (size_t i = 1; i < s.runs.size(); ++i) {
    EXPECT_LE(s.runs[0].aug_regret.mean, s.runs[i].aug_regret.mean);
  }
}

TEST(Sweep, PricedTradeoffHasInteriorMinimumBelowFormula) {
  ExperimentConfig c = config_from_json(minimal_config());
  c.n = 20;
  c.k = 5;
  c.T = 20000;
  c.replicas = 20;
  c.G = 1.0;
  c.policy.kind = PolicyKind::kPriced;
  c.adversary.kind = AdversaryKind::kModularDrift;
  const double eps = priced_defaults(20, 5, c.T, 1.0, 1.0).epsilon;
  std::vector<double> grid;
  for (double f : {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0, 2.0, 4.0}) grid.push_back(eps * f);
  const SweepResult s = sweep(c, "epsilon", grid);
  size_t best = 0;
  for (size_t i = 1; i < grid.size(); ++i) {
    if (s.runs[i].total.mean < s.runs[best].total.mean) best = i;
  }
  EXPECT_GT(best, 0u);
  EXPECT_LT(best, grid.size() - 1);
  // The formula balances a worst-case regret term, so the realized minimizer
  // sits at or below it.
  EXPECT_GE(grid[best], eps / 8);
  EXPECT_LE(grid[best], eps);
  EXPECT_LE(s.runs[4].total.mean, priced_regret_bound(20, 5, c.T, 1.0, 1.0));
}

TEST(Sweep, RejectsUnknownAxis) {
  EXPECT_THROW(sweep(config_from_json(minimal_config()), "colour", {1.0}), InputError);
}

TEST(Slope, RecoversPowerLaw) {
  const std::vector<double> x{1, 2, 4, 8};
  std::vector<double> y;
  for (double v : x) y.push_back(3 * std::pow(v, 0.5));
  EXPECT_NEAR(loglog_slope(x, y), 0.5, 1e-12);
}

TEST(LowerBound, CenteredAtZero) {
  const LowerBoundResult r = lower_bound(6, 2, 2000, 60, 11);
  EXPECT_EQ(r.regrets.size(), 60u);
  EXPECT_LE(std::abs(r.z), 4.0);
}

TEST(Verify, SmallGroundSetsPass) {
  VerifyOptions o;
  o.max_n = 4;
  const VerifyReport r = verify(o);
  EXPECT_TRUE(r.passed());
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Verify, FaultyProjectionIsNamed) {
  VerifyOptions o;
  o.max_n = 6;
  o.projector = [](std::span<const double> y, int k) {
    HypersimplexPoint p = euclidean_project(y, k);
    // Drops the upper cap: mass above 1 is not redistributed.
    for (size_t i = 0; i < y.size(); ++i) {
      if (p.p[i] == 1.0) p.p[i] = std::max(1.0, y[i]);
    }
    return p;
  };
  const VerifyReport r = verify(o);
  EXPECT_FALSE(r.passed());
  bool named = false;
  for (const auto& c : r.checks) {
    if (c.name == "projection-vs-active-set") {
      named = !c.passed && !c.detail.empty();
    } else if (c.name != "afw-gap-certificate") {
      EXPECT_TRUE(c.passed) << c.name;
    }
  }
  EXPECT_TRUE(named);
}

TEST(Verify, RejectsOversizedGroundSet) {
  VerifyOptions o;
  o.max_n = 20;
  EXPECT_THROW(verify(o), InputError);
}

}  // namespace
}  // namespace score
