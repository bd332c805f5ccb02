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

#include "score/hypersimplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "score/common.hpp"

namespace score {
namespace {

void check_budget(int n, int k, const char* what) {
  if (n <= 0 || k < 1 || k > n) {
    throw InputError(std::string(what) + ": need 1 <= k <= n, got n=" +
                     std::to_string(n) + " k=" + std::to_string(k));
  }
}

HypersimplexPoint all_ones(int n) {
  return HypersimplexPoint{n, std::vector<double>(n, 1.0)};
}

double capped_sum(std::span<const double> y, double tau) {
  double s = 0.0;
  for (double v : y) s += std::clamp(v - tau, 0.0, 1.0);
  return s;
}

// Threshold for the clamp map restricted to the coordinates that are strictly
// between the bounds at `tau`. Falls back to `tau` when that set is empty.
double refine_threshold(std::span<const double> y, int k, double tau) {
  double free_sum = 0.0;
  int free_count = 0;
  int ones = 0;
  for (double v : y) {
    const double z = v - tau;
    if (z >= 1.0) {
      ++ones;
    } else if (z > 0.0) {
      free_sum += v;
      ++free_count;
    }
  }
  if (free_count == 0) return tau;
  return (free_sum + ones - k) / free_count;
}

double vertex_dot(std::span<const double> g, const std::vector<int>& vertex) {
  double s = 0.0;
  for (int i : vertex) s += g[i];
  return s;
}

}  // namespace

bool HypersimplexPoint::feasible(double tol) const {
  if (k < 1 || k > n()) return false;
  double s = 0.0;
  for (double v : p) {
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
    s += v;
  }
  return std::abs(s - k) <= tol;
}

void repair_feasible(std::vector<double>& p, int k) {
  for (double& v : p) v = std::clamp(v, 0.0, 1.0);
  for (int pass = 0; pass < 4; ++pass) {
    const double residual = k - sum(p);
    if (residual == 0.0) return;
    if (residual > 0.0) {
      double room = 0.0;
      for (double v : p) room += 1.0 - v;
      if (room <= 0.0) return;
      for (double& v : p) v += residual * (1.0 - v) / room;
    } else {
      const double mass = sum(p);
      if (mass <= 0.0) return;
      for (double& v : p) v += residual * v / mass;
    }
    for (double& v : p) v = std::clamp(v, 0.0, 1.0);
  }
}

HypersimplexPoint entropic_ftrl_argmax(std::span<const double> theta, double eta,
                                       int k) {
  const int n = static_cast<int>(theta.size());
  check_budget(n, k, "entropic_ftrl_argmax");
  require_finite(theta, "entropic_ftrl_argmax");
  if (k == n) return all_ones(n);
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("entropic_ftrl_argmax: eta must be positive and finite");
  }

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = eta * theta[i];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] > x[b]; });

  // tail[j] = sum_{r >= j} exp(x_(r) - x_(j)); every term is at most one, so
  // the recursion neither overflows nor loses the leading term to underflow.
  std::vector<double> tail(n);
  tail[n - 1] = 1.0;
  for (int j = n - 2; j >= 0; --j) {
    tail[j] = 1.0 + tail[j + 1] * std::exp(x[order[j + 1]] - x[order[j]]);
  }

  // The first j whose largest uncapped coordinate (k - j) / tail[j] fits
  // under one is the KKT solution. j = k - 1 always qualifies.
  int capped = k - 1;
  for (int j = 0; j < k; ++j) {
    if (static_cast<double>(k - j) <= tail[j]) {
      capped = j;
      break;
    }
  }

  HypersimplexPoint out{k, std::vector<double>(n, 0.0)};
  const double scale = static_cast<double>(k - capped) / tail[capped];
  const double top = x[order[capped]];
  for (int r = 0; r < n; ++r) {
    const int i = order[r];
    out.p[i] = r < capped ? 1.0 : std::min(1.0, scale * std::exp(x[i] - top));
  }
  repair_feasible(out.p, k);
  return out;
}

HypersimplexPoint euclidean_project(std::span<const double> y, int k) {
  const int n = static_cast<int>(y.size());
  check_budget(n, k, "euclidean_project");
  require_finite(y, "euclidean_project");
  if (k == n) return all_ones(n);

  struct Event {
    double at;
    int slope_change;
  };
  std::vector<Event> events;
  events.reserve(2 * static_cast<size_t>(n));
  for (double v : y) {
    events.push_back({v - 1.0, -1});
    events.push_back({v, +1});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.at < b.at; });

  // Sweep tau upward: phi(tau) starts at n and falls to 0 with slope equal
  // to minus the number of coordinates strictly inside (0, 1).
  double phi = n;
  double last = events.front().at;
  int slope = 0;
  double tau = last;
  for (const Event& e : events) {
    const double next = phi + slope * (e.at - last);
    if (next <= k && slope < 0) {
      tau = last + (phi - k) / static_cast<double>(-slope);
      break;
    }
    phi = next;
    last = e.at;
    slope += e.slope_change;
    tau = last;
  }

  const double refined = refine_threshold(y, k, tau);
  if (std::abs(capped_sum(y, refined) - k) <= std::abs(capped_sum(y, tau) - k)) {
    tau = refined;
  }

  HypersimplexPoint out{k, std::vector<double>(n)};
  for (int i = 0; i < n; ++i) out.p[i] = std::clamp(y[i] - tau, 0.0, 1.0);
  repair_feasible(out.p, k);
  return out;
}

std::vector<int> lmo_indices(std::span<const double> cost, int k) {
  const int n = static_cast<int>(cost.size());
  check_budget(n, k, "lmo");
  require_finite(cost, "lmo");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (k < n) {
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
      return cost[a] < cost[b] || (cost[a] == cost[b] && a < b);
    });
  }
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<double> lmo(std::span<const double> cost, int k) {
  std::vector<double> out(cost.size(), 0.0);
  for (int i : lmo_indices(cost, k)) out[i] = 1.0;
  return out;
}

double QuadraticObjective::total_weight() const {
  double s = 0.0;
  for (const Center& c : centers) s += c.weight;
  return s;
}

std::vector<double> QuadraticObjective::projection_center() const {
  const double w = total_weight();
  if (!(w > 0.0)) {
    throw ContractError("QuadraticObjective: total weight must be positive");
  }
  std::vector<double> y(linear);
  for (const Center& c : centers) {
    for (int i = 0; i < n(); ++i) y[i] += c.weight * c.point[i];
  }
  for (double& v : y) v /= w;
  return y;
}

double QuadraticObjective::value(std::span<const double> x) const {
  double f = -dot(x, linear);
  for (const Center& c : centers) {
    double d2 = 0.0;
    for (int i = 0; i < n(); ++i) d2 += (x[i] - c.point[i]) * (x[i] - c.point[i]);
    f += 0.5 * c.weight * d2;
  }
  return f;
}

std::vector<double> QuadraticObjective::gradient(std::span<const double> x) const {
  std::vector<double> g(n());
  const double w = total_weight();
  for (int i = 0; i < n(); ++i) g[i] = w * x[i] - linear[i];
  for (const Center& c : centers) {
    for (int i = 0; i < n(); ++i) g[i] -= c.weight * c.point[i];
  }
  return g;
}

std::vector<double> ActiveSet::point(int n) const {
  std::vector<double> x(n, 0.0);
  for (size_t a = 0; a < vertices.size(); ++a) {
    for (int i : vertices[a]) x[i] += weights[a];
  }
  return x;
}

AfwResult afw_minimize(const QuadraticObjective& obj, double eps, int max_iters,
                       const std::vector<int>& start_vertex) {
  ActiveSet start;
  start.vertices.push_back(start_vertex);
  start.weights.push_back(1.0);
  return afw_minimize(obj, eps, max_iters, start);
}

AfwResult afw_minimize(const QuadraticObjective& obj, double eps, int max_iters,
                       const ActiveSet& start) {
  const int n = obj.n();
  const int k = obj.k;
  check_budget(n, k, "afw_minimize");
  for (const auto& c : obj.centers) {
    if (c.weight < 0.0 || static_cast<int>(c.point.size()) != n) {
      throw InputError("afw_minimize: centers need nonnegative weight and size n");
    }
  }
  const double weight = obj.total_weight();
  if (!(weight > 0.0)) {
    throw ContractError("afw_minimize: objective is linear; use lmo instead");
  }
  if (!(eps > 0.0) || max_iters < 0) {
    throw InputError("afw_minimize: eps must be positive and max_iters nonnegative");
  }
  if (start.empty()) throw InputError("afw_minimize: empty start");
  for (const auto& v : start.vertices) {
    if (static_cast<int>(v.size()) != k) {
      throw InputError("afw_minimize: start vertex must have exactly k indices");
    }
  }

  // F(x) = (w/2)||x - c||^2 + const on the hypersimplex. Shifting c by a
  // multiple of the all-ones vector only changes the constant, so center it
  // at its k-th largest entry to keep the gradient entries small.
  std::vector<double> center = obj.projection_center();
  {
    std::vector<double> sorted(center);
    std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end(),
                     std::greater<double>());
    const double shift = sorted[k - 1];
    for (double& v : center) v -= shift;
  }
  auto reduced = [&](std::span<const double> x) {
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) d2 += (x[i] - center[i]) * (x[i] - center[i]);
    return 0.5 * weight * d2;
  };

  AfwResult result;
  result.active = start;
  std::vector<double> x = start.point(n);
  const double offset = obj.value(x) - reduced(x);
  result.objective_trace.push_back(reduced(x) + offset);

  std::vector<double> grad(n), dir(n);
  double gap = 0.0;
  int iter = 0;
  for (;;) {
    for (int i = 0; i < n; ++i) grad[i] = weight * (x[i] - center[i]);
    const std::vector<int> fw_vertex = lmo_indices(grad, k);
    const double gx = dot(grad, x);
    const double gs = vertex_dot(grad, fw_vertex);
    gap = gx - gs;
    if (gap <= eps) break;
    if (iter >= max_iters) {
      result.hit_iteration_cap = true;
      break;
    }

    ActiveSet& act = result.active;
    size_t away = 0;
    double gv = vertex_dot(grad, act.vertices[0]);
    for (size_t a = 1; a < act.vertices.size(); ++a) {
      const double g = vertex_dot(grad, act.vertices[a]);
      if (g > gv) {
        gv = g;
        away = a;
      }
    }
    const double away_gap = gv - gx;

    const bool fw_step = gap >= away_gap;
    double gamma_max;
    double slope;  // <grad, dir>
    if (fw_step) {
      std::fill(dir.begin(), dir.end(), 0.0);
      for (int i : fw_vertex) dir[i] = 1.0;
      for (int i = 0; i < n; ++i) dir[i] -= x[i];
      gamma_max = 1.0;
      slope = -gap;
    } else {
      const double alpha = act.weights[away];
      for (int i = 0; i < n; ++i) dir[i] = x[i];
      for (int i : act.vertices[away]) dir[i] -= 1.0;
      gamma_max = alpha / (1.0 - alpha);
      slope = -away_gap;
    }
    const double dd = dot(dir, dir);
    if (!(dd > 0.0)) break;
    const double gamma = std::clamp(-slope / (weight * dd), 0.0, gamma_max);
    if (!(gamma > 0.0)) break;

    for (int i = 0; i < n; ++i) x[i] += gamma * dir[i];

    if (fw_step) {
      if (gamma >= 1.0) {
        act.vertices.assign(1, fw_vertex);
        act.weights.assign(1, 1.0);
      } else {
        bool found = false;
        for (size_t a = 0; a < act.vertices.size(); ++a) {
          act.weights[a] *= 1.0 - gamma;
          if (act.vertices[a] == fw_vertex) {
            act.weights[a] += gamma;
            found = true;
          }
        }
        if (!found) {
          act.vertices.push_back(fw_vertex);
          act.weights.push_back(gamma);
        }
      }
    } else {
      for (double& w : act.weights) w *= 1.0 + gamma;
      act.weights[away] -= gamma;
      if (gamma >= gamma_max) act.weights[away] = 0.0;  // drop step
    }
    for (size_t a = act.vertices.size(); a-- > 0;) {
      if (act.weights[a] <= 0.0) {
        act.vertices.erase(act.vertices.begin() + static_cast<long>(a));
        act.weights.erase(act.weights.begin() + static_cast<long>(a));
      }
    }

    ++iter;
    result.objective_trace.push_back(reduced(x) + offset);
  }

  result.iterations = iter;
  result.gap = gap;
  result.point = HypersimplexPoint{k, std::move(x)};
  repair_feasible(result.point.p, k);
  return result;
}

int default_afw_iterations(long horizon) {
  return static_cast<int>(std::ceil(20.0 * std::log(static_cast<double>(horizon) + 2.0)));
}

}  // namespace score
