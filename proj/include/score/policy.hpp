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

#ifndef SCORE_POLICY_HPP_
#define SCORE_POLICY_HPP_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "score/common.hpp"
#include "score/corevec.hpp"
#include "score/hypersimplex.hpp"
#include "score/setfn.hpp"

namespace score {

struct RoundRecord {
  long t = 0;  // 1-based
  std::vector<double> p;
  double u = 0.0;
  std::vector<int> set;
  double reward = 0.0;
  double full_reward = 0.0;
  // Admissible vector of f_t, used for regret accounting.
  std::vector<double> g;
  // Vector the learner was updated with (g itself, or an estimate of it).
  std::vector<double> g_fed;
  bool observed = true;
  double cost = 0.0;
};

struct Trace {
  int n = 0;
  int k = 0;
  std::vector<RoundRecord> rounds;
};

// Returns an admissible vector for the revealed reward.
using CoreStrategy = std::function<AdmissibleVector(const SetFunction&)>;

struct ScoreConfig {
  int n = 0;
  int k = 0;
  long T = 0;
  double alpha = 1.0;
  double M = 1.0;
  std::optional<double> G;
  std::optional<double> eta;

  // G if set, else alpha M sqrt(2).
  double norm_bound() const;
  // eta if set, else default_eta(n, k, T, norm_bound()).
  double step_size() const;
};

// sqrt(k ln(n/k) / (2 G^2 T)).
double default_eta(int n, int k, long T, double G);

struct PricedParams {
  double epsilon = 1.0;
  double eta = 0.0;
  // The closed-form epsilon exceeded 1 and was clamped.
  bool clamped = false;
};

// epsilon = (2 G^2 k ln(n/k) / (T C^2))^(1/3), clamped to 1, and
// eta = sqrt(epsilon k ln(n/k) / (2 T G^2)).
PricedParams priced_defaults(int n, int k, long T, double G, double C);

// Inverse-propensity estimate: g_i / p_i on the selected coordinates, 0
// elsewhere. Every selected p_i must be positive.
std::vector<double> ips_estimate(const HypersimplexPoint& p, std::span<const double> g,
                                 std::span<const int> set);

// Entropic FTRL on admissible vectors, with full-information,
// semi-bandit and priced-feedback rounds.
class ScorePolicy {
 public:
  explicit ScorePolicy(const ScoreConfig& cfg);

  const ScoreConfig& config() const { return cfg_; }
  double eta() const { return eta_; }
  const std::vector<double>& theta() const { return theta_; }
  long rounds_played() const { return t_; }

  HypersimplexPoint propose() const;
  void feed(std::span<const double> g_hat);

  RoundRecord score_round(const SetFunction& f, const CoreStrategy& core, Rng& rng);
  // Feeds g_i / p_i on the selected coordinates and 0 elsewhere.
  RoundRecord semibandit_round(const SetFunction& f, const CoreStrategy& core, Rng& rng);
  // Observes with probability epsilon at cost C and feeds g / epsilon; a set
  // is played from the current p on every round.
  RoundRecord priced_round(double epsilon, double cost, const SetFunction& f,
                           const CoreStrategy& core, Rng& rng);

 private:
  RoundRecord play(const SetFunction& f, const CoreStrategy& core, Rng& rng);

  ScoreConfig cfg_;
  double eta_ = 0.0;
  std::vector<double> theta_;
  long t_ = 0;
};

enum class ProjectionMode { kExact, kAfw };

struct OftrlConfig {
  int n = 0;
  int k = 0;
  long T = 0;
  // Regularizer scale; 0 selects 1/k.
  double sigma = 0.0;
  // Norm bound entering the AFW tolerance.
  double G = 1.0;
  ProjectionMode mode = ProjectionMode::kExact;
  // 0 selects default_afw_iterations(T).
  int afw_max_iters = 0;
  // In AFW mode, also compute the exact projection of the same objective
  // and record the distance.
  bool shadow_exact = false;
};

struct OftrlDiagnostics {
  bool linear_route = false;
  int afw_iterations = 0;
  bool afw_capped = false;
  double afw_gap = 0.0;
  double afw_eps = 0.0;
  // ||p_afw - p_exact||_2, or -1 when not computed.
  double shadow_distance = -1.0;
};

// Optimistic FTRL with hints and adaptive quadratic regularizers.
class OftrlPolicy {
 public:
  explicit OftrlPolicy(const OftrlConfig& cfg);

  const OftrlConfig& config() const { return cfg_; }
  double sigma() const { return sigma_; }
  const std::vector<double>& theta() const { return theta_; }
  double sigma_sum() const { return sigma_sum_; }
  double delta_sum() const { return delta_sum_; }
  // First positive delta, or 0 while none has been seen.
  double first_delta() const { return first_delta_; }
  const OftrlDiagnostics& last() const { return diag_; }
  // sigma sqrt(first_delta) / (200 G^2 T^2).
  double afw_epsilon() const;

  HypersimplexPoint propose(std::span<const double> hint);
  void update(const HypersimplexPoint& p, std::span<const double> fvec,
              std::span<const double> hint);

  RoundRecord oftrl_round(std::span<const double> hint, const SetFunction& f,
                          const AdmissibleVector& fvec, Rng& rng);

 private:
  OftrlConfig cfg_;
  double sigma_ = 0.0;
  int max_iters_ = 0;
  std::vector<double> theta_;
  std::vector<double> center_sum_;  // sum sigma_t p_t
  double sigma_sum_ = 0.0;
  double delta_sum_ = 0.0;
  double first_delta_ = 0.0;
  ActiveSet warm_;
  OftrlDiagnostics diag_;
  long t_ = 0;
};

// Running regret statistics over a stream of rounds.
class RegretTracker {
 public:
  RegretTracker(int n, int k, double alpha);

  void add(const RoundRecord& r);

  double cum_reward() const { return cum_reward_; }
  double cum_full() const { return cum_full_; }
  double cum_cost() const { return cum_cost_; }
  // (k / (n alpha)) sum_t f_t([n]).
  double benchmark() const;
  double augmented_regret() const;
  // Top-k sum of sum_t g_t minus sum_t <g_t, p_t>.
  double static_regret() const;

 private:
  int n_, k_;
  double alpha_;
  double cum_reward_ = 0.0;
  double cum_full_ = 0.0;
  double cum_linear_ = 0.0;
  double cum_cost_ = 0.0;
  std::vector<double> cum_g_;
};

double augmented_regret(const Trace& trace, double alpha, int k, int n);
double static_linear_regret(const Trace& trace);

// 2 G sqrt(2 k T ln(n/k)).
double static_regret_bound(int n, int k, long T, double G);
// 4 M sqrt(k T ln(n/k)).
double augmented_regret_bound(int n, int k, long T, double M);
// 12 k sqrt(sum_t Distance^2).
double optimistic_regret_bound(int k, double sum_sq_distance);
// 4 (G^2 k ln(n/k) C)^(1/3) T^(2/3).
double priced_regret_bound(int n, int k, long T, double G, double C);

}  // namespace score

#endif  // SCORE_POLICY_HPP_
