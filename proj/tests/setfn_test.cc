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


#include "score/setfn.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace score {
namespace {

double enumerate_distance(const SetFunction& f, const std::vector<double>& h) {
  double d = 0.0;
  for (Mask s = 0; s < (Mask{1} << f.size()); ++s) {
    double hs = 0.0;
    for (int i = 0; i < f.size(); ++i) {
      if ((s >> i) & 1) hs += h[i];
    }
    d = std::max(d, std::abs(f.value_mask(s) - hs));
  }
  return d;
}

// Largest rho with rho f(i|B) <= f(i|A) for all A subset of B, i outside B.
double rho_by_triples(const SetFunction& f) {
  const int n = f.size();
  double rho = 1.0;
  for (Mask b = 0; b < (Mask{1} << n); ++b) {
    for (Mask a = b;; a = (a - 1) & b) {
      for (int i = 0; i < n; ++i) {
        if ((b >> i) & 1) continue;
        const Mask bit = Mask{1} << i;
        const double ga = f.value_mask(a | bit) - f.value_mask(a);
        const double gb = f.value_mask(b | bit) - f.value_mask(b);
        if (gb > 1e-12) rho = std::min(rho, std::max(ga, 0.0) / gb);
      }
      if (a == 0) break;
    }
  }
  return rho;
}

TEST(Masks, RoundTrip) {
  const std::vector<int> s{0, 3, 5};
  EXPECT_EQ(mask_of(s, 6), Mask{0b101001});
  EXPECT_EQ(indices_of(mask_of(s, 6)), s);
  EXPECT_THROW(mask_of(std::vector<int>{6}, 6), InputError);
  EXPECT_THROW(mask_of(std::vector<int>{1, 1}, 6), InputError);
}

TEST(Modular, ValuesAndBound) {
  const ModularFunction f({1.0, -2.0, 0.5});
  EXPECT_DOUBLE_EQ(f.value(std::vector<int>{0, 2}), 1.5);
  EXPECT_DOUBLE_EQ(f.full_value(), -0.5);
  EXPECT_DOUBLE_EQ(f.value_bound(), 1.5);
  EXPECT_TRUE(check_submodular(f));
  EXPECT_FALSE(check_monotone(f));
  EXPECT_TRUE(check_monotone(ModularFunction({1.0, 0.0, 2.0})));
}

TEST(Coverage, CountsUnionWeight) {
  const CoverageFunction f(3, {{0, 1}, {1, 2}, {2}});
  EXPECT_DOUBLE_EQ(f.value(std::vector<int>{0}), 2.0);
  EXPECT_DOUBLE_EQ(f.value(std::vector<int>{0, 1}), 3.0);
  EXPECT_DOUBLE_EQ(f.value(std::vector<int>{1, 2}), 2.0);
  EXPECT_DOUBLE_EQ(f.value_bound(), 3.0);
  EXPECT_TRUE(check_submodular(f));
  EXPECT_TRUE(check_monotone(f));
}

TEST(Coverage, AllValuesAgreeWithPointwise) {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const int universe = 1 + static_cast<int>(rng.below(100));
    std::vector<std::vector<int>> sets(n);
    for (auto& s : sets) {
      for (int a = 0; a < universe; ++a) {
        if (rng.bernoulli(0.2)) s.push_back(a);
      }
    }
    std::vector<double> w(universe);
    for (double& x : w) x = rng.uniform();
    const CoverageFunction f(universe, sets, w);
    const std::vector<double> all = f.all_values();
    for (Mask m = 0; m < all.size(); ++m) {
      double ref = 0.0;
      for (int a = 0; a < universe; ++a) {
        bool covered = false;
        for (int i : indices_of(m)) covered = covered || std::count(sets[i].begin(), sets[i].end(), a);
        if (covered) ref += w[a];
      }
      EXPECT_NEAR(all[m], ref, 1e-12);
      EXPECT_NEAR(f.value_mask(m), ref, 1e-12);
    }
    EXPECT_TRUE(check_submodular(f));
    EXPECT_NEAR(estimate_rho(f).rho, 1.0, 1e-9);
  }
}

TEST(Matching, MinCostPerfectMatchingOnBalancedSets) {
  Matrix w(2, 2);
  w(0, 0) = 1;
  w(0, 1) = 2;
  w(1, 0) = 3;
  w(1, 1) = 4;
  const MatchingRewardFunction f(w);
  EXPECT_EQ(f.size(), 4);
  EXPECT_DOUBLE_EQ(f.full_value(), 5.0);
  // Elements 0,1 are rows and 2,3 are columns.
  EXPECT_DOUBLE_EQ(f.value(std::vector<int>{1, 2}), 3.0);
  EXPECT_DOUBLE_EQ(f.value(std::vector<int>{0, 3}), 2.0);
  EXPECT_TRUE(f.in_domain(mask_of(std::vector<int>{0, 3}, 4)));
  EXPECT_FALSE(f.in_domain(mask_of(std::vector<int>{0, 1}, 4)));
  EXPECT_DOUBLE_EQ(f.value_bound(), 8.0);
}

TEST(Table, RequiresNormalization) {
  EXPECT_THROW(TableSetFunction(1, {1.0, 2.0}), InputError);
  EXPECT_THROW(TableSetFunction(2, {0.0, 2.0}), InputError);
}

TEST(DistanceSup, IdenticalModularIsZero) {
  EXPECT_DOUBLE_EQ(distance_sup(ModularFunction({1, 2, -3}), ModularFunction({1, 2, -3})), 0.0);
}

TEST(DistanceSup, TwoElementModular) {
  EXPECT_DOUBLE_EQ(distance_sup(ModularFunction({1, 2}), ModularFunction({2, 1})), 1.0);
}

TEST(DistanceSup, ModularClosedFormMatchesEnumeration) {
  Rng rng(32);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(10));
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    EXPECT_NEAR(distance_sup(ModularFunction(a), ModularFunction(b)),
                enumerate_distance(ModularFunction(a), b), 1e-12);
  }
}

TEST(DistanceSup, CoverageAgainstSingletonApproximation) {
  const CoverageFunction f(4, {{0, 1}, {1, 2}, {2, 3}, {0}});
  std::vector<double> h(4);
  for (int i = 0; i < 4; ++i) h[i] = f.value(std::vector<int>{i});
  EXPECT_NEAR(distance_sup(f, ModularFunction(h)), enumerate_distance(f, h), 1e-15);
  EXPECT_DOUBLE_EQ(distance_sup(f, ModularFunction(h)), 3.0);
}

TEST(DistanceSup, SizeGuard) {
  const CallbackSetFunction f(30, [](Mask m) { return std::popcount(m) > 0 ? 1.0 : 0.0; }, 1.0);
  EXPECT_THROW(distance_sup(f, ModularFunction(std::vector<double>(30, 0.0))), SizeError);
}

TEST(Submodularity, SupermodularIsRejected) {
  const CallbackSetFunction f(4, [](Mask m) { return std::pow(std::popcount(m), 2); }, 16.0);
  EXPECT_FALSE(check_submodular(f));
  EXPECT_TRUE(check_monotone(f));
}

TEST(Monotonicity, SecondThreePlayerGame) {
  const TableSetFunction f(3, {0, 2, 1, 2, 0, 2, 1, 2});
  EXPECT_TRUE(check_monotone(f));
  // max(2 [0 in S], [1 in S]) is a weighted maximum, hence submodular.
  EXPECT_TRUE(check_submodular(f));
}

TEST(Rho, SubmodularAndModularAreOne) {
  EXPECT_DOUBLE_EQ(estimate_rho(ModularFunction({0.5, 1.0, 2.0})).rho, 1.0);
  EXPECT_DOUBLE_EQ(estimate_rho(CoverageFunction(3, {{0, 1}, {1, 2}, {2}})).rho, 1.0);
}

TEST(Rho, SupermodularPerturbation) {
  for (double eps : {0.01, 0.1, 0.5}) {
    const CallbackSetFunction f(
        5, [eps](Mask m) { return std::popcount(m) + (std::popcount(m) >= 2 ? eps : 0.0); }, 5 + eps);
    const RhoEstimate r = estimate_rho(f);
    EXPECT_LT(r.rho, 1.0);
    EXPECT_NEAR(r.rho, rho_by_triples(f), 1e-12);
    EXPECT_NEAR(r.rho, 1.0 / (1.0 + eps), 1e-12);
  }
}

TEST(Rho, RandomMonotoneMatchesTriples) {
  Rng rng(33);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(6));
    std::vector<double> v(Mask{1} << n, 0.0);
    for (Mask m = 1; m < v.size(); ++m) {
      double best = 0.0;
      for (int i : indices_of(m)) best = std::max(best, v[m & ~(Mask{1} << i)]);
      v[m] = best + rng.uniform(0.05, 1.0);
    }
    const TableSetFunction f(n, v);
    EXPECT_NEAR(estimate_rho(f).rho, rho_by_triples(f), 1e-12);
  }
}

TEST(RewardJson, ParsesEveryKind) {
  using nlohmann::json;
  auto m = reward_from_json(json{{"kind", "modular"}, {"weights", {1.0, 2.0}}});
  EXPECT_DOUBLE_EQ(m->full_value(), 3.0);
  auto c = reward_from_json(json{{"kind", "coverage"}, {"universe", 3}, {"sets", {{0, 1}, {1, 2}}}});
  EXPECT_DOUBLE_EQ(c->full_value(), 3.0);
  auto g = reward_from_json(json{{"kind", "matching"}, {"weights", {{1.0, 2.0}, {3.0, 4.0}}}});
  EXPECT_DOUBLE_EQ(g->full_value(), 5.0);
  auto t = reward_from_json(json{{"kind", "table"}, {"n", 1}, {"values", {0.0, 1.0}}});
  EXPECT_DOUBLE_EQ(t->full_value(), 1.0);
}

TEST(RewardJson, RejectsUnknownKeysAndKinds) {
  using nlohmann::json;
  EXPECT_THROW(reward_from_json(json{{"kind", "modular"}, {"weights", {1.0}}, {"extra", 1}}), InputError);
  EXPECT_THROW(reward_from_json(json{{"kind", "cubic"}}), InputError);
}

TEST(SizeGuards, EnumerationLimits) {
  const CallbackSetFunction big(27, [](Mask) { return 0.0; }, 0.0);
  EXPECT_THROW(big.all_values(), SizeError);
  const CallbackSetFunction mid(15, [](Mask) { return 0.0; }, 0.0);
  EXPECT_THROW(check_submodular(mid), SizeError);
  EXPECT_THROW(SetFunction* p = new ModularFunction(std::vector<double>(63, 1.0)); delete p, InputError);
}

}  // namespace
}  // namespace score
