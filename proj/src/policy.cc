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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "score/sampling.hpp"

namespace score {
namespace {

void check_config(int n, int k, long T) {
  if (n < 1 || k < 1 || k > n) throw InputError("policy: need 1 <= k <= n");
  if (T < 1) throw InputError("policy: horizon must be positive");
}

double top_k_sum(std::vector<double> v, int k) {
  std::nth_element(v.begin(), v.begin() + (k - 1), v.end(), std::greater<double>());
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += v[i];
  return s;
}

std::vector<double> admissible_or_throw(const CoreStrategy& core, const SetFunction& f,
                                        long t) {
  AdmissibleVector g;
  try {
    g = core(f);
  } catch (const std::exception& e) {
    throw ContractError("round " + std::to_string(t) + ": core strategy failed: " + e.what());
  }
  if (static_cast<int>(g.g.size()) != f.size()) {
    throw ContractError("round " + std::to_string(t) + ": core vector has wrong size");
  }
  require_finite(g.g, "core strategy");
  return std::move(g.g);
}

}  // namespace

double ScoreConfig::norm_bound() const {
  return G ? *G : alpha * M * std::numbers::sqrt2;
}

double ScoreConfig::step_size() const {
  return eta ? *eta : default_eta(n, k, T, norm_bound());
}

double default_eta(int n, int k, long T, double G) {
  return std::sqrt(k * log_ratio(n, k) / (2.0 * G * G * static_cast<double>(T)));
}

PricedParams priced_defaults(int n, int k, long T, double G, double C) {
  if (!(G > 0.0) || !(C > 0.0)) throw InputError("priced_defaults: G and C must be positive");
  PricedParams out;
  const double lr = k * log_ratio(n, k);
  out.epsilon = std::cbrt(2.0 * G * G * lr / (static_cast<double>(T) * C * C));
  if (out.epsilon > 1.0) {
    out.epsilon = 1.0;
    out.clamped = true;
  }
  out.eta = std::sqrt(out.epsilon * lr / (2.0 * static_cast<double>(T) * G * G));
  return out;
}

std::vector<double> ips_estimate(const HypersimplexPoint& p, std::span<const double> g,
                                 std::span<const int> set) {
  std::vector<double> out(p.n(), 0.0);
  for (int i : set) {
    if (!(p.p[i] > 0.0)) {
      throw ContractError("ips_estimate: selected element " + std::to_string(i) +
                          " has zero inclusion probability");
    }
    out[i] = g[i] / p.p[i];
  }
  return out;
}

ScorePolicy::ScorePolicy(const ScoreConfig& cfg) : cfg_(cfg), theta_(cfg.n, 0.0) {
  check_config(cfg.n, cfg.k, cfg.T);
  if (cfg.alpha < 1.0) throw InputError("ScorePolicy: alpha must be at least 1");
  if (cfg.k < cfg.n) {
    eta_ = cfg.step_size();
    if (!(eta_ > 0.0) || !std::isfinite(eta_)) {
      throw InputError("ScorePolicy: step size must be positive and finite");
    }
  }
}

HypersimplexPoint ScorePolicy::propose() const {
  return entropic_ftrl_argmax(theta_, eta_, cfg_.k);
}

void ScorePolicy::feed(std::span<const double> g_hat) {
  if (static_cast<int>(g_hat.size()) != cfg_.n) throw InputError("feed: size mismatch");
  for (int i = 0; i < cfg_.n; ++i) theta_[i] += g_hat[i];
}

RoundRecord ScorePolicy::play(const SetFunction& f, const CoreStrategy& core, Rng& rng) {
  if (f.size() != cfg_.n) throw InputError("round: reward has the wrong ground set");
  RoundRecord r;
  r.t = ++t_;
  const HypersimplexPoint p = propose();
  const Draw d = draw(p, rng);
  r.p = p.p;
  r.u = d.u;
  r.set = d.set;
  r.reward = f.value(d.set);
  r.full_reward = f.full_value();
  r.g = admissible_or_throw(core, f, r.t);
  return r;
}

RoundRecord ScorePolicy::score_round(const SetFunction& f, const CoreStrategy& core, Rng& rng) {
  RoundRecord r = play(f, core, rng);
  r.g_fed = r.g;
  feed(r.g_fed);
  return r;
}

RoundRecord ScorePolicy::semibandit_round(const SetFunction& f, const CoreStrategy& core,
                                          Rng& rng) {
  RoundRecord r = play(f, core, rng);
  r.g_fed = ips_estimate(HypersimplexPoint{cfg_.k, r.p}, r.g, r.set);
  feed(r.g_fed);
  return r;
}

RoundRecord ScorePolicy::priced_round(double epsilon, double cost, const SetFunction& f,
                                      const CoreStrategy& core, Rng& rng) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("priced_round: epsilon must be in (0,1]");
  if (!(cost >= 0.0)) throw InputError("priced_round: cost must be nonnegative");
  RoundRecord r = play(f, core, rng);
  r.observed = rng.bernoulli(epsilon);
  r.g_fed.assign(cfg_.n, 0.0);
  if (r.observed) {
    r.cost = cost;
    for (int i = 0; i < cfg_.n; ++i) r.g_fed[i] = r.g[i] / epsilon;
  }
  feed(r.g_fed);
  return r;
}

OftrlPolicy::OftrlPolicy(const OftrlConfig& cfg)
    : cfg_(cfg), theta_(cfg.n, 0.0), center_sum_(cfg.n, 0.0) {
  check_config(cfg.n, cfg.k, cfg.T);
  sigma_ = cfg.sigma > 0.0 ? cfg.sigma : 1.0 / cfg.k;
  if (!(cfg.G > 0.0)) throw InputError("OftrlPolicy: G must be positive");
  max_iters_ = cfg.afw_max_iters > 0 ? cfg.afw_max_iters : default_afw_iterations(cfg.T);
}

double OftrlPolicy::afw_epsilon() const {
  const double T = static_cast<double>(cfg_.T);
  return sigma_ * std::sqrt(first_delta_) / (200.0 * cfg_.G * cfg_.G * T * T);
}

HypersimplexPoint OftrlPolicy::propose(std::span<const double> hint) {
  const int n = cfg_.n;
  const int k = cfg_.k;
  if (static_cast<int>(hint.size()) != n) throw InputError("propose: hint has the wrong size");
  require_finite(hint, "hint");
  diag_ = OftrlDiagnostics{};
  if (k == n) return HypersimplexPoint{k, std::vector<double>(n, 1.0)};

  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) b[i] = theta_[i] + hint[i];

  if (!(sigma_sum_ > 0.0)) {
    diag_.linear_route = true;
    std::vector<double> neg(n);
    for (int i = 0; i < n; ++i) neg[i] = -b[i];
    std::vector<int> vertex = lmo_indices(neg, k);
    HypersimplexPoint p{k, std::vector<double>(n, 0.0)};
    for (int i : vertex) p.p[i] = 1.0;
    warm_.vertices.assign(1, std::move(vertex));
    warm_.weights.assign(1, 1.0);
    return p;
  }

  std::vector<double> center(n);
  for (int i = 0; i < n; ++i) center[i] = center_sum_[i] / sigma_sum_;
  QuadraticObjective obj{k, {{sigma_sum_, std::move(center)}}, std::move(b)};
  if (cfg_.mode == ProjectionMode::kExact) {
    return euclidean_project(obj.projection_center(), k);
  }

  diag_.afw_eps = afw_epsilon();
  AfwResult res = afw_minimize(obj, diag_.afw_eps, max_iters_, warm_);
  warm_ = std::move(res.active);
  diag_.afw_iterations = res.iterations;
  diag_.afw_capped = res.hit_iteration_cap;
  diag_.afw_gap = res.gap;
  if (cfg_.shadow_exact) {
    const HypersimplexPoint exact = euclidean_project(obj.projection_center(), k);
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) d2 += (res.point.p[i] - exact.p[i]) * (res.point.p[i] - exact.p[i]);
    diag_.shadow_distance = std::sqrt(d2);
  }
  return res.point;
}

void OftrlPolicy::update(const HypersimplexPoint& p, std::span<const double> fvec,
                         std::span<const double> hint) {
  const int n = cfg_.n;
  if (static_cast<int>(fvec.size()) != n || static_cast<int>(hint.size()) != n) {
    throw InputError("update: size mismatch");
  }
  double delta = 0.0;
  for (int i = 0; i < n; ++i) {
    theta_[i] += fvec[i];
    delta += (fvec[i] - hint[i]) * (fvec[i] - hint[i]);
  }
  const double before = delta_sum_;
  delta_sum_ += delta;
  const double sigma_t = sigma_ * (std::sqrt(delta_sum_) - std::sqrt(before));
  sigma_sum_ += sigma_t;
  for (int i = 0; i < n; ++i) center_sum_[i] += sigma_t * p.p[i];
  if (first_delta_ == 0.0 && delta > 0.0) first_delta_ = delta;
}

RoundRecord OftrlPolicy::oftrl_round(std::span<const double> hint, const SetFunction& f,
                                     const AdmissibleVector& fvec, Rng& rng) {
  if (f.size() != cfg_.n) throw InputError("oftrl_round: reward has the wrong ground set");
  RoundRecord r;
  r.t = ++t_;
  const HypersimplexPoint p = propose(hint);
  const Draw d = draw(p, rng);
  r.p = p.p;
  r.u = d.u;
  r.set = d.set;
  r.reward = f.value(d.set);
  r.full_reward = f.full_value();
  r.g = fvec.g;
  r.g_fed = fvec.g;
  update(p, fvec.g, hint);
  return r;
}

RegretTracker::RegretTracker(int n, int k, double alpha)
    : n_(n), k_(k), alpha_(alpha), cum_g_(n, 0.0) {}

void RegretTracker::add(const RoundRecord& r) {
  cum_reward_ += r.reward;
  cum_full_ += r.full_reward;
  cum_cost_ += r.cost;
  cum_linear_ += dot(r.g, r.p);
  for (int i = 0; i < n_; ++i) cum_g_[i] += r.g[i];
}

double RegretTracker::benchmark() const {
  return static_cast<double>(k_) / (n_ * alpha_) * cum_full_;
}

double RegretTracker::augmented_regret() const { return benchmark() - cum_reward_; }

double RegretTracker::static_regret() const { return top_k_sum(cum_g_, k_) - cum_linear_; }

double augmented_regret(const Trace& trace, double alpha, int k, int n) {
  double full = 0.0, reward = 0.0;
  for (const RoundRecord& r : trace.rounds) {
    full += r.full_reward;
    reward += r.reward;
  }
  return static_cast<double>(k) / (n * alpha) * full - reward;
}

double static_linear_regret(const Trace& trace) {
  RegretTracker tracker(trace.n, trace.k, 1.0);
  for (const RoundRecord& r : trace.rounds) tracker.add(r);
  return tracker.static_regret();
}

double static_regret_bound(int n, int k, long T, double G) {
  return 2.0 * G * std::sqrt(2.0 * k * static_cast<double>(T) * log_ratio(n, k));
}

double augmented_regret_bound(int n, int k, long T, double M) {
  return 4.0 * M * std::sqrt(k * static_cast<double>(T) * log_ratio(n, k));
}

double optimistic_regret_bound(int k, double sum_sq_distance) {
  return 12.0 * k * std::sqrt(sum_sq_distance);
}

double priced_regret_bound(int n, int k, long T, double G, double C) {
  return 4.0 * std::cbrt(G * G * k * log_ratio(n, k) * C) *
         std::pow(static_cast<double>(T), 2.0 / 3.0);
}

}  // namespace score
