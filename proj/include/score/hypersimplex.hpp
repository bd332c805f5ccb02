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

// Geometry of the capped simplex {p in [0,1]^n : sum p = k} and the solvers
// the online policies need on it.

#ifndef SCORE_HYPERSIMPLEX_HPP_
#define SCORE_HYPERSIMPLEX_HPP_

#include <span>
#include <vector>

namespace score {

inline constexpr double kFeasTol = 1e-9;

// Marginal inclusion probabilities of a k-of-n sampling design.
struct HypersimplexPoint {
  int k = 0;
  std::vector<double> p;

  int n() const { return static_cast<int>(p.size()); }
  bool feasible(double tol = kFeasTol) const;
};

// Clamps p to [0,1] and spreads the residual k - sum(p) over the coordinates
// that still have room, proportionally to that room. Leaves an exactly
// feasible vector up to rounding.
void repair_feasible(std::vector<double>& p, int k);

// argmax over the capped simplex of <theta, p> - (1/eta) sum p_i ln p_i.
//
// The maximizer has the form p_i = min(1, c exp(eta theta_i)). The capped
// coordinates are a prefix of theta sorted in decreasing order, so the
// solution is found exactly by scanning the number of capped coordinates.
HypersimplexPoint entropic_ftrl_argmax(std::span<const double> theta, double eta,
                                       int k);

// Euclidean projection onto the capped simplex. Solves for the threshold tau
// in p_i = clamp(y_i - tau, 0, 1) by sorting the 2n breakpoints of the
// piecewise-linear map tau -> sum clamp(y_i - tau, 0, 1).
HypersimplexPoint euclidean_project(std::span<const double> y, int k);

// Indices of the k smallest costs, ties broken by lowest index, returned in
// increasing index order.
std::vector<int> lmo_indices(std::span<const double> cost, int k);

// 0/1 indicator of lmo_indices.
std::vector<double> lmo(std::span<const double> cost, int k);

// F(p) = sum_t (w_t / 2) ||p - c_t||^2 - <p, linear>.
struct QuadraticObjective {
  struct Center {
    double weight = 0.0;
    std::vector<double> point;
  };

  int k = 0;
  std::vector<Center> centers;
  std::vector<double> linear;

  int n() const { return static_cast<int>(linear.size()); }
  double total_weight() const;
  // (linear + sum w_t c_t) / sum w_t: minimizing F over the capped simplex is
  // the projection of this point. Requires total_weight() > 0.
  std::vector<double> projection_center() const;
  double value(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
};

// Convex combination of hypersimplex vertices; each vertex is stored as its
// sorted list of k indices.
struct ActiveSet {
  std::vector<std::vector<int>> vertices;
  std::vector<double> weights;

  bool empty() const { return vertices.empty(); }
  std::vector<double> point(int n) const;
};

struct AfwResult {
  HypersimplexPoint point;
  ActiveSet active;
  int iterations = 0;
  // Frank-Wolfe duality gap at the returned point; bounds F(x) - F(x*).
  double gap = 0.0;
  bool hit_iteration_cap = false;
  // F evaluated at every iterate, starting point first.
  std::vector<double> objective_trace;
};

// Away-steps Frank-Wolfe with exact line search. Stops once the FW gap is at
// most eps, or after max_iters updates (hit_iteration_cap is then set and the
// last iterate is returned). Requires obj.total_weight() > 0; a purely linear
// objective must be routed to lmo by the caller.
AfwResult afw_minimize(const QuadraticObjective& obj, double eps, int max_iters,
                       const std::vector<int>& start_vertex);
AfwResult afw_minimize(const QuadraticObjective& obj, double eps, int max_iters,
                       const ActiveSet& start);

// ceil(20 ln(T + 2)).
int default_afw_iterations(long horizon);

}  // namespace score

#endif  // SCORE_HYPERSIMPLEX_HPP_
