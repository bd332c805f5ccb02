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


#include "score/policy.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

namespace score {
namespace {

CoreStrategy modular_weights() {
  return [](const SetFunction& f) {
    const auto& m = dynamic_cast<const ModularFunction&>(f);
    return AdmissibleVector{m.weights(), 1.0, Provenance::kExternal};
  };
}

double top_k_sum(std::vector<double> v, int k) {
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += v[i];
  return s;
}

// Static regret recomputed from the logged marginals.
double replay_static_regret(const Trace& tr) {
  std::vector<double> cum(tr.n, 0.0);
  double gained = 0.0;
  for (const auto& r : tr.rounds) {
    for (int i = 0; i < tr.n; ++i) {
      cum[i] += r.g[i];
      gained += r.g[i] * r.p[i];
    }
  }
  return top_k_sum(cum, tr.k) - gained;
}

TEST(Bounds, ClosedForms) {
  EXPECT_NEAR(static_regret_bound(20, 5, 10000, 1.0), 2 * std::sqrt(2 * 5 * 10000 * std::log(4.0)), 1e-9);
  EXPECT_NEAR(augmented_regret_bound(20, 5, 10000, 1.0), 4 * std::sqrt(5 * 10000 * std::log(4.0)), 1e-9);
  EXPECT_NEAR(optimistic_regret_bound(4, 9.0), 12 * 4 * 3.0, 1e-12);
  // With C = 1 the priced bound is 4 G^(2/3) (k ln(n/k))^(1/3) T^(2/3).
  const double G = 1.7;
  EXPECT_NEAR(priced_regret_bound(20, 5, 1000, G, 1.0),
              4 * std::pow(G, 2.0 / 3) * std::cbrt(5 * std::log(4.0)) * std::pow(1000.0, 2.0 / 3), 1e-9);
}

TEST(Priced, ClosedFormEpsilon) {
  const PricedParams p = priced_defaults(20, 5, 100000, 1.0, 1.0);
  EXPECT_NEAR(p.epsilon, 0.0518, 5e-5);
  EXPECT_FALSE(p.clamped);
  EXPECT_NEAR(p.eta, std::sqrt(p.epsilon * 5 * std::log(4.0) / (2 * 100000)), 1e-15);
  EXPECT_TRUE(priced_defaults(20, 5, 10, 1.0, 1.0).clamped);
  EXPECT_DOUBLE_EQ(priced_defaults(20, 5, 10, 1.0, 1.0).epsilon, 1.0);
}

TEST(ScorePolicy, FirstRoundIsUniform) {
  ScorePolicy pol(ScoreConfig{8, 3, 100, 1.0, 1.0});
  for (double x : pol.propose().p) EXPECT_DOUBLE_EQ(x, 3.0 / 8);
}

TEST(ScorePolicy, FullSetHasZeroAugmentedRegret) {
  ScorePolicy pol(ScoreConfig{4, 4, 50, 1.0, 10.0});
  Rng rng(51), adv(52);
  Trace tr{4, 4, {}};
  for (int t = 0; t < 50; ++t) {
    std::vector<double> w(4);
    for (double& x : w) x = adv.uniform();
    const ModularFunction f(w);
    const RoundRecord r = pol.score_round(f, modular_weights(), rng);
    EXPECT_EQ(r.set, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_DOUBLE_EQ(r.reward, f.full_value());
    tr.rounds.push_back(r);
  }
  EXPECT_NEAR(augmented_regret(tr, 1.0, 4, 4), 0.0, 1e-12);
}

TEST(ScorePolicy, FixedModularAdversaryConverges) {
  const int n = 10, k = 3;
  const long T = 5000;
  const std::vector<double> w{0.1, 0.9, 0.2, 0.8, 0.3, 0.7, 0.0, 0.05, 0.15, 0.25};
  const double G = norm2(w);
  ScorePolicy pol(ScoreConfig{n, k, T, 1.0, 1.0, G});
  Rng rng(53);
  Trace tr{n, k, {}};
  const ModularFunction f(w);
  for (long t = 0; t < T; ++t) tr.rounds.push_back(pol.score_round(f, modular_weights(), rng));
  const double reg = static_linear_regret(tr);
  EXPECT_LE(reg, static_regret_bound(n, k, T, G));
  EXPECT_NEAR(reg, replay_static_regret(tr), 1e-6);
  // The last rounds concentrate on the top three elements.
  const auto& p = tr.rounds.back().p;
  EXPECT_GT(p[1] + p[3] + p[5], 2.9);
}

TEST(ScorePolicy, CoreFailureNamesTheRound) {
  ScorePolicy pol(ScoreConfig{3, 1, 10, 1.0, 1.0});
  Rng rng(54);
  const ModularFunction f({1, 1, 1});
  const CoreStrategy bad = [](const SetFunction&) -> AdmissibleVector {
    throw std::runtime_error("solver diverged");
  };
  try {
    pol.score_round(f, bad, rng);
    FAIL() << "expected an exception";
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("round 1"), std::string::npos) << e.what();
  }
}

TEST(Regret, SingleUniformRound) {
  const std::vector<double> g{3, -1, 2, 0.5};
  Trace tr{4, 2, {}};
  RoundRecord r;
  r.p.assign(4, 0.5);
  r.g = g;
  tr.rounds.push_back(r);
  EXPECT_DOUBLE_EQ(static_linear_regret(tr), 5.0 - 0.5 * 4.5);
}

TEST(Regret, ThreeRoundHandTrace) {
  // n = 3, k = 1, alpha = 1; benchmark is (1/3) sum_t f_t([n]).
  Trace tr{3, 1, {}};
  const double full[] = {3.0, 6.0, 0.0};
  const double got[] = {1.0, 2.0, 0.0};
  for (int t = 0; t < 3; ++t) {
    RoundRecord r;
    r.full_reward = full[t];
    r.reward = got[t];
    tr.rounds.push_back(r);
  }
  EXPECT_DOUBLE_EQ(augmented_regret(tr, 1.0, 1, 3), 3.0 - 3.0);
  EXPECT_DOUBLE_EQ(augmented_regret(tr, 2.0, 1, 3), 1.5 - 3.0);
}

TEST(Regret, AlternatingSignsMatchReplay) {
  const int n = 6, k = 2;
  const long T = 400;
  ScorePolicy pol(ScoreConfig{n, k, T, 1.0, 1.0, 2.5});
  Rng rng(55);
  Trace tr{n, k, {}};
  RegretTracker tracker(n, k, 1.0);
  for (long t = 0; t < T; ++t) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = ((t + i) % 2 ? 1.0 : -1.0) * (i + 1) / 6.0;
    const RoundRecord r = pol.score_round(ModularFunction(w), modular_weights(), rng);
    tracker.add(r);
    tr.rounds.push_back(r);
  }
  EXPECT_NEAR(static_linear_regret(tr), replay_static_regret(tr), 1e-9);
  EXPECT_NEAR(tracker.static_regret(), replay_static_regret(tr), 1e-9);
  EXPECT_NEAR(tracker.augmented_regret(), augmented_regret(tr, 1.0, k, n), 1e-9);
}

TEST(ScorePolicy, DeterministicTraces) {
  auto run = [] {
    ScorePolicy pol(ScoreConfig{7, 3, 200, 1.0, 1.0});
    Rng rng(56), adv(57);
    std::vector<RoundRecord> out;
    for (int t = 0; t < 200; ++t) {
      std::vector<double> w(7);
      for (double& x : w) x = adv.uniform();
      out.push_back(pol.score_round(ModularFunction(w), modular_weights(), rng));
    }
    return out;
  };
  const auto a = run(), b = run();
  for (size_t t = 0; t < a.size(); ++t) {
    EXPECT_EQ(a[t].p, b[t].p);
    EXPECT_EQ(a[t].set, b[t].set);
    EXPECT_EQ(a[t].u, b[t].u);
  }
}

TEST(Semibandit, FullSetFeedsTrueVector) {
  ScorePolicy pol(ScoreConfig{3, 3, 10, 1.0, 1.0});
  Rng rng(58);
  const RoundRecord r = pol.semibandit_round(ModularFunction({0.2, 0.4, 0.6}), modular_weights(), rng);
  EXPECT_EQ(r.g_fed, (std::vector<double>{0.2, 0.4, 0.6}));
}

TEST(Semibandit, UnselectedCoordinatesAreZero) {
  ScorePolicy pol(ScoreConfig{6, 2, 10, 1.0, 1.0});
  Rng rng(59);
  const RoundRecord r = pol.semibandit_round(ModularFunction({1, 2, 3, 4, 5, 6}), modular_weights(), rng);
  for (int i = 0; i < 6; ++i) {
    const bool sel = std::count(r.set.begin(), r.set.end(), i) > 0;
    EXPECT_DOUBLE_EQ(r.g_fed[i], sel ? (i + 1) / r.p[i] : 0.0);
  }
}

TEST(Semibandit, IpsRejectsZeroPropensity) {
  EXPECT_THROW(ips_estimate(HypersimplexPoint{1, {1.0, 0.0}}, std::vector<double>{1, 1}, std::vector<int>{1}),
               ContractError);
}

TEST(Priced, FullObservationPaysEveryRound) {
  ScorePolicy pol(ScoreConfig{5, 2, 100, 1.0, 1.0});
  Rng rng(60);
  RegretTracker tr(5, 2, 1.0);
  for (int t = 0; t < 100; ++t) {
    const RoundRecord r = pol.priced_round(1.0, 0.25, ModularFunction({1, 2, 3, 4, 5}), modular_weights(), rng);
    EXPECT_TRUE(r.observed);
    EXPECT_EQ(r.g_fed, r.g);
    tr.add(r);
  }
  EXPECT_DOUBLE_EQ(tr.cum_cost(), 25.0);
}

TEST(Priced, UnobservedRoundsFeedZero) {
  ScorePolicy pol(ScoreConfig{5, 2, 1000, 1.0, 1.0});
  Rng rng(61);
  long observed = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::vector<double> theta_before = pol.theta();
    const RoundRecord r = pol.priced_round(0.1, 1.0, ModularFunction({1, 2, 3, 4, 5}), modular_weights(), rng);
    EXPECT_EQ(r.set.size(), 2u);
    if (r.observed) {
      ++observed;
      EXPECT_DOUBLE_EQ(r.cost, 1.0);
      for (int i = 0; i < 5; ++i) EXPECT_NEAR(r.g_fed[i], r.g[i] / 0.1, 1e-12);
    } else {
      EXPECT_DOUBLE_EQ(r.cost, 0.0);
      EXPECT_EQ(r.g_fed, std::vector<double>(5, 0.0));
      EXPECT_EQ(pol.theta(), theta_before);
    }
  }
  EXPECT_NEAR(observed, 100, 4 * std::sqrt(1000 * 0.1 * 0.9));
  EXPECT_THROW(pol.priced_round(0.0, 1.0, ModularFunction({1, 2, 3, 4, 5}), modular_weights(), rng),
               InputError);
}

TEST(Oftrl, PerfectHintsTakeTheLinearRoute) {
  const int n = 8, k = 3;
  const long T = 300;
  OftrlPolicy pol(OftrlConfig{n, k, T});
  Rng rng(62), adv(63);
  Trace tr{n, k, {}};
  for (long t = 0; t < T; ++t) {
    std::vector<double> w(n);
    for (double& x : w) x = adv.normal();
    const ModularFunction f(w);
    const RoundRecord r = pol.oftrl_round(w, f, AdmissibleVector{w, 1.0}, rng);
    EXPECT_TRUE(pol.last().linear_route);
    tr.rounds.push_back(r);
  }
  EXPECT_DOUBLE_EQ(pol.delta_sum(), 0.0);
  EXPECT_LE(static_linear_regret(tr), 1e-9 * T);
}

TEST(Oftrl, NoisyHintsUseTheQuadraticRoute) {
  const int n = 8, k = 3;
  OftrlPolicy pol(OftrlConfig{n, k, 100});
  Rng rng(64), adv(65);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> w(n), h(n);
    for (int i = 0; i < n; ++i) {
      w[i] = adv.normal();
      h[i] = w[i] + 0.3 * adv.normal();
    }
    pol.oftrl_round(h, ModularFunction(w), AdmissibleVector{w, 1.0}, rng);
    if (t > 0) {
      EXPECT_FALSE(pol.last().linear_route);
    }
  }
  EXPECT_GT(pol.sigma_sum(), 0.0);
  EXPECT_NEAR(pol.sigma_sum(), pol.sigma() * std::sqrt(pol.delta_sum()), 1e-9);
}

TEST(Oftrl, AfwTracksExactProjection) {
  const int n = 10, k = 4;
  const long T = 500;
  OftrlPolicy afw(OftrlConfig{n, k, T, 0.0, 3.0, ProjectionMode::kAfw, 0, true});
  OftrlPolicy exact(OftrlConfig{n, k, T, 0.0, 3.0, ProjectionMode::kExact});
  Rng adv(66);
  for (long t = 0; t < T; ++t) {
    std::vector<double> w(n), h(n);
    for (int i = 0; i < n; ++i) {
      w[i] = adv.uniform();
      h[i] = w[i] + 0.2 * adv.normal();
    }
    const HypersimplexPoint pa = afw.propose(h);
    const HypersimplexPoint pe = exact.propose(h);
    if (!afw.last().linear_route) {
      const double radius = std::sqrt(2 * afw.afw_epsilon() / (afw.sigma() * std::sqrt(afw.first_delta())));
      double d = 0.0;
      for (int i = 0; i < n; ++i) d += (pa.p[i] - pe.p[i]) * (pa.p[i] - pe.p[i]);
      EXPECT_LE(std::sqrt(d), radius);
      EXPECT_LE(afw.last().shadow_distance, radius);
    }
    afw.update(pa, w, h);
    exact.update(pe, w, h);
  }
}

}  // namespace
}  // namespace score
