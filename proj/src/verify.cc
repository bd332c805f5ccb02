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

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "score/assignment.hpp"
#include "score/bench.hpp"
#include "score/corevec.hpp"
#include "score/sampling.hpp"

namespace score {
namespace {

class Check {
 public:
  explicit Check(std::string name) { result_.name = std::move(name); }

  void count() { ++result_.instances; }
  void expect(bool ok, const std::string& what) {
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.detail = what;
    }
  }
  CheckResult done() && { return std::move(result_); }

 private:
  CheckResult result_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

double linf(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double l2(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(d);
}

int rand_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
}

// Minimizer of ||p - y|| over the capped simplex by enumerating which
// coordinates sit at 0, at 1 or strictly between.
std::vector<double> projection_by_faces(std::span<const double> y, int k) {
  const int n = static_cast<int>(y.size());
  std::vector<int> state(n, 0);  // 0 zero, 1 one, 2 free
  std::vector<double> best, cand(n);
  double best_d = std::numeric_limits<double>::infinity();
  for (;;) {
    int ones = 0, free = 0;
    double free_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (state[i] == 1) ++ones;
      if (state[i] == 2) {
        ++free;
        free_sum += y[i];
      }
    }
    bool ok = ones <= k && (free > 0 || ones == k);
    if (ok) {
      const double tau = free > 0 ? (free_sum + ones - k) / free : 0.0;
      for (int i = 0; i < n && ok; ++i) {
        cand[i] = state[i] == 2 ? y[i] - tau : state[i];
        ok = cand[i] >= -1e-12 && cand[i] <= 1.0 + 1e-12;
      }
      if (ok) {
        const double d = l2(cand, y);
        if (d < best_d) {
          best_d = d;
          best = cand;
        }
      }
    }
    int pos = 0;
    while (pos < n && state[pos] == 2) state[pos++] = 0;
    if (pos == n) break;
    ++state[pos];
  }
  return best;
}

std::unique_ptr<CoverageFunction> random_coverage(int n, Rng& rng, bool private_items) {
  const int universe = rand_int(rng, 1, 30);
  const double density = rng.uniform(0.05, 0.5);
  std::vector<std::vector<int>> sets(n);
  for (auto& s : sets) {
    for (int a = 0; a < universe; ++a) {
      if (rng.bernoulli(density)) s.push_back(a);
    }
  }
  int total = universe;
  if (private_items) {
    for (int i = 0; i < n; ++i) sets[i].push_back(total++);
  }
  std::vector<double> weights(total);
  for (double& w : weights) w = rng.uniform(0.1, 1.0);
  return std::make_unique<CoverageFunction>(total, std::move(sets), std::move(weights));
}

HypersimplexPoint random_feasible(int n, int k, Rng& rng) {
  std::vector<double> theta(n);
  for (double& x : theta) x = rng.normal();
  static constexpr double kScales[] = {0.01, 1.0, 10.0, 1000.0};
  return entropic_ftrl_argmax(theta, kScales[rng.below(4)], k);
}

void check_norm(Check& c, const AdmissibleVector& g, double alpha, double M, const char* what) {
  c.count();
  const double bound = alpha * M * std::numbers::sqrt2 + 1e-7;
  c.expect(norm2(g.g) <= bound, std::string(what) + ": ||g|| = " + fmt(norm2(g.g)) +
                                    " exceeds alpha M sqrt(2) = " + fmt(bound));
}

CheckResult check_projection(const VerifyOptions& o, Rng& rng) {
  Check c("projection-vs-active-set");
  for (int n = 1; n <= o.max_n; ++n) {
    const int reps = n <= 8 ? 20 : 3;
    for (int r = 0; r < reps; ++r) {
      const int k = rand_int(rng, 1, n);
      std::vector<double> y(n);
      const double spread = rng.uniform(0.1, 3.0);
      for (double& v : y) v = rng.uniform(-spread, spread) + static_cast<double>(k) / n;
      const HypersimplexPoint p = o.projector(y, k);
      const std::vector<double> ref = projection_by_faces(y, k);
      c.count();
      c.expect(p.n() == n && p.feasible(), "projection infeasible at n=" + std::to_string(n));
      if (p.n() == n) {
        c.expect(linf(p.p, ref) <= 1e-9, "projection differs from face enumeration by " +
                                             fmt(linf(p.p, ref)) + " at n=" + std::to_string(n) +
                                             " k=" + std::to_string(k));
      }
    }
  }
  return std::move(c).done();
}

CheckResult check_lmo(const VerifyOptions& o, Rng& rng) {
  Check c("lmo-vs-vertex-enumeration");
  for (int n = 1; n <= o.max_n; ++n) {
    for (int r = 0; r < 5; ++r) {
      const int k = rand_int(rng, 1, n);
      std::vector<double> cost(n);
      for (double& v : cost) v = static_cast<double>(rng.below(5)) - 2.0;
      const std::vector<double> v = lmo(cost, k);
      double best = std::numeric_limits<double>::infinity();
      for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (std::popcount(m) != k) continue;
        double s = 0.0;
        for (int i : indices_of(m)) s += cost[i];
        best = std::min(best, s);
      }
      c.count();
      c.expect(sum(v) == k, "lmo did not return k elements");
      c.expect(std::abs(dot(v, cost) - best) <= 1e-12, "lmo is not optimal at n=" + std::to_string(n));
    }
  }
  return std::move(c).done();
}

CheckResult check_madow(const VerifyOptions& o, Rng& rng) {
  Check c("madow-exact-marginal-law");
  const int nmax = std::min(50, 4 * o.max_n);
  for (int r = 0; r < 200; ++r) {
    const int n = rand_int(rng, 1, nmax);
    const int k = rand_int(rng, 1, n);
    const HypersimplexPoint p = random_feasible(n, k, rng);
    const std::vector<double> m = exact_inclusion_measure(p);
    c.count();
    c.expect(linf(m, p.p) <= 1e-12, "inclusion measure differs from p by " + fmt(linf(m, p.p)));
  }
  return std::move(c).done();
}

void check_core_marginal(const VerifyOptions& o, Rng& rng, Check& c, Check& norms) {
  for (int n = 1; n <= o.max_n; ++n) {
    for (int r = 0; r < 3; ++r) {
      const auto f = random_coverage(n, rng, false);
      c.count();
      c.expect(check_submodular(*f), "coverage function failed the submodularity check");
      for (int s = 0; s < 5; ++s) {
        const std::vector<int> perm = rng.permutation(n);
        const AdmissibleVector g = marginal_vector(*f, perm, 1.0);
        c.expect(core_membership(g.g, *f, 1.0),
                 "marginal vector of a submodular function is not in the 1-core (n=" +
                     std::to_string(n) + ")");
        check_norm(norms, g, 1.0, f->value_bound(), "marginal");
      }
    }
  }
}

void check_core_rho(const VerifyOptions& o, Rng& rng, Check& c, Check& norms) {
  for (int n = 2; n <= o.max_n; ++n) {
    for (int r = 0; r < 2; ++r) {
      const auto cov = random_coverage(n, rng, true);
      const double eps = rng.uniform(0.01, 0.3);
      const std::vector<double> base = cov->all_values();
      std::vector<double> t(base.size());
      for (Mask s = 0; s < t.size(); ++s) {
        const double sz = std::popcount(s);
        t[s] = base[s] + eps * sz * sz;
      }
      TableSetFunction f(n, std::move(t));
      const RhoEstimate rho = estimate_rho(f);
      c.count();
      c.expect(rho.rho > 0.0 && !rho.not_rho_submodular, "synthetic function has rho = 0");
      if (!(rho.rho > 0.0)) continue;
      const AdmissibleVector g = marginal_vector(f, rng.permutation(n), 1.0 / rho.rho);
      const double ta = tightest_alpha(g.g, f);
      c.expect(ta <= 1.0 / rho.rho + 1e-9, "tightest alpha " + fmt(ta) + " exceeds 1/rho = " +
                                               fmt(1.0 / rho.rho));
      c.expect(core_membership(g.g, f, 1.0 / rho.rho), "marginal vector not in the 1/rho core");
      check_norm(norms, g, 1.0 / rho.rho, f.value_bound(), "rho-marginal");
    }
  }
}

void check_core_dictator(const VerifyOptions& o, Rng& rng, Check& c, Check& norms) {
  for (int n = 1; n <= o.max_n; ++n) {
    for (int r = 0; r < 3; ++r) {
      const auto cov = random_coverage(n, rng, false);
      const int star = rand_int(rng, 0, n - 1);
      const double m = rng.uniform(0.2, 1.0) * std::max(cov->full_value(), 1e-3);
      const std::vector<double> base = cov->all_values();
      std::vector<double> t(base.size());
      for (Mask s = 0; s < t.size(); ++s) t[s] = std::max(base[s], ((s >> star) & 1) ? m : 0.0);
      TableSetFunction f(n, std::move(t));
      const std::optional<int> d = find_dictator(f, m);
      c.count();
      c.expect(d.has_value(), "no dictator found although one was planted");
      if (!d) continue;
      const AdmissibleVector g = dictator_vector(f, *d, m);
      c.expect(core_membership(g.g, f, *g.alpha),
               "dictator vector not in the M/m core (alpha=" + fmt(*g.alpha) + ")");
      check_norm(norms, g, *g.alpha, f.value_bound(), "dictator");
    }
  }
}

CheckResult check_three_player_games() {
  Check c("three-player-games");
  TableSetFunction first(3, {0, 1, 1, 1, 0, 1, 1, 1});
  TableSetFunction second(3, {0, 2, 1, 2, 0, 2, 1, 2});
  c.count();
  const AdmissibleVector m = marginal_vector(first, identity_permutation(3));
  c.expect(linf(m.g, std::vector<double>{1, 0, 0}) == 0.0, "first game: marginal vector is not (1,0,0)");
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    c.count();
    const std::vector<double> g{t, 1.0 - t, 0.0};
    c.expect(core_membership(g, first, 1.0), "first game: (t,1-t,0) rejected at t=" + fmt(t));
    c.expect(tightest_alpha(g, first) == 1.0, "first game: tightest alpha above 1");
  }
  for (const std::vector<double>& g : {std::vector<double>{1.1, -0.1, 0.0},
                                        std::vector<double>{-0.1, 1.1, 0.0},
                                        std::vector<double>{0.5, 0.4, 0.1}}) {
    c.count();
    c.expect(!core_membership(g, first, 1.0), "first game: vector outside the family accepted");
  }
  c.expect(find_dictator(first, 1.0) == 0, "first game: dictator is not element 0");
  c.expect(linf(shapley_exact(first), std::vector<double>{0.5, 0.5, 0.0}) <= 1e-15,
           "first game: Shapley value is not (1/2,1/2,0)");

  c.count();
  c.expect(check_monotone(second), "second game is not monotone");
  const std::vector<double> g{3.0, 0.0, -1.0};
  c.expect(core_membership(g, second, 2.0), "second game: (3,0,-1) not in the 2-core");
  c.expect(!core_membership(g, second, 1.49), "second game: (3,0,-1) accepted below alpha 3/2");
  c.expect(std::abs(tightest_alpha(g, second) - 1.5) <= 1e-15, "second game: tightest alpha is not 3/2");
  const AdmissibleVector d = dictator_vector(second, 0, 1.0);
  c.expect(linf(d.g, std::vector<double>{2, 0, 0}) == 0.0 && *d.alpha == 2.0,
           "second game: dictator vector is not (2,0,0) with alpha 2");
  c.expect(core_membership(d.g, second, 2.0), "second game: dictator vector not in the 2-core");
  return std::move(c).done();
}

void check_matching(const VerifyOptions& o, Rng& rng, Check& c, Check& norms) {
  for (int m = 1; 2 * m <= o.max_n; ++m) {
    for (int r = 0; r < 4; ++r) {
      Matrix w(m, m);
      const bool integral = r % 2 == 0;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          w(i, j) = integral ? static_cast<double>(rng.below(4)) : rng.uniform(0.0, 2.0);
        }
      }
      const MatchingRewardFunction f(w);
      const Assignment a = hungarian_duals(w);
      c.count();
      if (m <= 7) {
        std::vector<int> perm = identity_permutation(m);
        double best = std::numeric_limits<double>::infinity();
        do {
          double s = 0.0;
          for (int i = 0; i < m; ++i) s += w(i, perm[i]);
          best = std::min(best, s);
        } while (std::next_permutation(perm.begin(), perm.end()));
        c.expect(std::abs(a.value - best) <= 1e-9, "assignment value differs from enumeration");
      }
      const AdmissibleVector g = matching_core_vector(w);
      c.expect(std::abs(sum(g.g) - f.full_value()) <= 1e-9,
               "strong duality fails: sum of duals " + fmt(sum(g.g)) + " vs value " + fmt(f.full_value()));
      c.expect(core_membership(g.g, f, 1.0), "assignment duals not in the 1-core on balanced sets");
      check_norm(norms, g, 1.0, f.value_bound(), "matching-dual");
    }
  }
}

CheckResult check_hint_distance(const VerifyOptions& o, Rng& rng) {
  Check c("hint-distance-inequality");
  const int nmax = std::max(1, std::min(o.max_n, 10));
  for (int r = 0; r < 1000; ++r) {
    const int n = rand_int(rng, 1, nmax);
    const auto f = random_coverage(n, rng, false);
    const AdmissibleVector fv = marginal_vector(*f, rng.permutation(n), 1.0);
    std::vector<double> h(n);
    const double scale = rng.uniform(0.0, 1.0);
    const bool near = rng.bernoulli(0.5);
    for (int i = 0; i < n; ++i) h[i] = (near ? fv.g[i] : 0.0) + scale * rng.normal();
    const ModularFunction hm(h);
    const double lhs = norm1(std::vector<double>(
        [&] {
          std::vector<double> d(n);
          for (int i = 0; i < n; ++i) d[i] = fv.g[i] - h[i];
          return d;
        }()));
    const double dist = distance_sup(*f, hm);
    c.count();
    c.expect(lhs <= 3.0 * dist + 1e-9, "||f - h||_1 = " + fmt(lhs) + " exceeds 3 Distance = " + fmt(3.0 * dist));
  }
  return std::move(c).done();
}

CheckResult check_afw(const VerifyOptions& o, Rng& rng) {
  Check c("afw-gap-certificate");
  for (int n = 2; n <= o.max_n; ++n) {
    for (int r = 0; r < 4; ++r) {
      const int k = rand_int(rng, 1, n - 1);
      QuadraticObjective obj;
      obj.k = k;
      obj.linear.resize(n);
      for (double& b : obj.linear) b = rng.normal();
      const int centers = rand_int(rng, 1, 4);
      for (int s = 0; s < centers; ++s) {
        obj.centers.push_back({rng.uniform(0.1, 2.0), random_feasible(n, k, rng).p});
      }
      const double eps = 1e-10;
      std::vector<double> neg(obj.linear);
      for (double& x : neg) x = -x;
      const AfwResult res = afw_minimize(obj, eps, 100000, lmo_indices(neg, k));
      const HypersimplexPoint exact = o.projector(obj.projection_center(), k);
      c.count();
      c.expect(res.point.feasible(), "AFW iterate is infeasible");
      c.expect(!res.hit_iteration_cap && res.gap <= eps, "AFW did not certify the gap, gap = " + fmt(res.gap));
      for (size_t i = 1; i < res.objective_trace.size(); ++i) {
        c.expect(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-12, "AFW objective increased");
      }
      const double radius = std::sqrt(2.0 * eps / obj.total_weight()) + 1e-9;
      c.expect(exact.n() == n && l2(res.point.p, exact.p) <= radius,
               "AFW minimizer differs from the projection by " + fmt(l2(res.point.p, exact.p)));
    }
  }
  return std::move(c).done();
}

CheckResult check_shapley_core(const VerifyOptions& o, Rng& rng) {
  Check c("shapley-core-condition");
  const int nmax = std::max(1, std::min(o.max_n, 6));
  for (int r = 0; r < 200; ++r) {
    const int n = rand_int(rng, 1, nmax);
    const auto cov = random_coverage(n, rng, false);
    const std::vector<double> base = cov->all_values();
    const double bump = rng.uniform(0.0, 1.0);
    std::vector<double> t(base.size());
    for (Mask s = 0; s < t.size(); ++s) {
      const double sz = std::popcount(s);
      t[s] = base[s] + bump * sz * sz;
    }
    TableSetFunction f(n, std::move(t));
    const std::vector<double> phi = shapley_exact(f);
    c.count();
    c.expect(avg_submodular_shapley_check(f, 1e-9) == core_membership(phi, f, 1.0, 1e-9),
             "Shapley core condition disagrees with direct membership");
  }
  return std::move(c).done();
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify(const VerifyOptions& options) {
  VerifyOptions o = options;
  if (o.max_n < 1 || o.max_n > 14) throw InputError("verify: max_n must be in 1..14");
  if (!o.projector) o.projector = [](std::span<const double> y, int k) { return euclidean_project(y, k); };
  const auto start = std::chrono::steady_clock::now();
  Rng rng(o.seed);
  VerifyReport rep;
  rep.checks.push_back(check_projection(o, rng));
  rep.checks.push_back(check_lmo(o, rng));
  rep.checks.push_back(check_madow(o, rng));
  Check marginal("core-marginal-submodular"), rho("core-rho-submodular"),
      dictator("core-dictator"), matching("core-matching-dual"), norms("core-norm-bound");
  check_core_marginal(o, rng, marginal, norms);
  check_core_rho(o, rng, rho, norms);
  check_core_dictator(o, rng, dictator, norms);
  check_matching(o, rng, matching, norms);
  rep.checks.push_back(std::move(marginal).done());
  rep.checks.push_back(std::move(rho).done());
  rep.checks.push_back(std::move(dictator).done());
  rep.checks.push_back(check_three_player_games());
  rep.checks.push_back(std::move(matching).done());
  rep.checks.push_back(std::move(norms).done());
  rep.checks.push_back(check_hint_distance(o, rng));
  rep.checks.push_back(check_afw(o, rng));
  rep.checks.push_back(check_shapley_core(o, rng));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace score
