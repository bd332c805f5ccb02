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

#include "score/corevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace score {
namespace {

constexpr int kCoreEnumMax = 20;
constexpr int kShapleyCheckMax = 10;

void guard(int n, int limit, const char* what) {
  if (n > limit) {
    throw SizeError(std::string(what) + ": n = " + std::to_string(n) +
                    " exceeds the enumeration limit " + std::to_string(limit));
  }
}

void check_size(std::span<const double> g, const SetFunction& f, const char* what) {
  if (static_cast<int>(g.size()) != f.size()) {
    throw InputError(std::string(what) + ": vector size differs from the ground set");
  }
}

// Sum of g over every subset, indexed by mask.
std::vector<double> subset_sums(std::span<const double> g) {
  std::vector<double> s(size_t{1} << g.size(), 0.0);
  for (Mask m = 1; m < s.size(); ++m) s[m] = s[m & (m - 1)] + g[std::countr_zero(m)];
  return s;
}

// (|S| - 1)! (n - |S|)! / n! for |S| = 1..n.
std::vector<double> shapley_weights(int n) {
  std::vector<double> c(n + 1, 0.0);
  for (int s = 1; s <= n; ++s) {
    // 1 / (s * C(n, s)), built with lgamma for large n.
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
    c[s] = std::exp(-log_binom) / s;
  }
  return c;
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kMarginal: return "marginal";
    case Provenance::kDictator: return "dictator";
    case Provenance::kShapley: return "shapley";
    case Provenance::kMatchingDual: return "matching-dual";
    case Provenance::kExternal: return "external";
  }
  return "external";
}

std::vector<int> identity_permutation(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

AdmissibleVector marginal_vector(const SetFunction& f, std::span<const int> perm,
                                 std::optional<double> alpha) {
  const int n = f.size();
  if (static_cast<int>(perm.size()) != n) throw InputError("marginal_vector: bad permutation size");
  AdmissibleVector out{std::vector<double>(n, 0.0), alpha, Provenance::kMarginal};
  Mask seen = 0;
  double prev = f.value_mask(0);
  for (int i : perm) {
    if (i < 0 || i >= n || (seen >> i) & 1) throw InputError("marginal_vector: not a permutation");
    seen |= Mask{1} << i;
    const double cur = f.value_mask(seen);
    out.g[i] = cur - prev;
    prev = cur;
  }
  return out;
}

std::vector<double> shapley_mc(const SetFunction& f, int num_perms, Rng& rng) {
  if (num_perms < 1) throw InputError("shapley_mc: num_perms must be positive");
  const int n = f.size();
  std::vector<double> acc(n, 0.0);
  for (int s = 0; s < num_perms; ++s) {
    const std::vector<int> perm = rng.permutation(n);
    const AdmissibleVector m = marginal_vector(f, perm);
    for (int i = 0; i < n; ++i) acc[i] += m.g[i];
  }
  for (double& x : acc) x /= num_perms;
  return acc;
}

std::vector<double> shapley_exact(const SetFunction& f) {
  const int n = f.size();
  guard(n, kCoreEnumMax, "shapley_exact");
  const std::vector<double> t = f.all_values();
  const std::vector<double> c = shapley_weights(n);
  std::vector<double> phi(n, 0.0);
  for (Mask s = 1; s < t.size(); ++s) {
    const double w = c[std::popcount(s)];
    for (Mask rest = s; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      phi[i] += w * (t[s] - t[s & ~(Mask{1} << i)]);
    }
  }
  return phi;
}

std::optional<int> find_dictator(const SetFunction& f, double m) {
  for (int i = 0; i < f.size(); ++i) {
    if (f.value_mask(Mask{1} << i) >= m) return i;
  }
  return std::nullopt;
}

AdmissibleVector dictator_vector(const SetFunction& f, int i_star, double m) {
  if (i_star < 0 || i_star >= f.size()) throw InputError("dictator_vector: index out of range");
  if (!(m > 0.0)) throw InputError("dictator_vector: m must be positive");
  const double total = f.full_value();
  AdmissibleVector out{std::vector<double>(f.size(), 0.0), total / m, Provenance::kDictator};
  out.g[i_star] = total;
  return out;
}

bool core_membership(std::span<const double> g, const SetFunction& f, double alpha, double tol) {
  check_size(g, f, "core_membership");
  guard(f.size(), kCoreEnumMax, "core_membership");
  if (std::abs(sum(g) - f.full_value()) > tol) return false;
  const std::vector<double> gs = subset_sums(g);
  const std::vector<double> t = f.all_values();
  for (Mask s = 1; s < t.size(); ++s) {
    if (!f.in_domain(s)) continue;
    if (gs[s] > alpha * t[s] + tol) return false;
  }
  return true;
}

double tightest_alpha(std::span<const double> g, const SetFunction& f, double tol) {
  check_size(g, f, "tightest_alpha");
  guard(f.size(), kCoreEnumMax, "tightest_alpha");
  const std::vector<double> gs = subset_sums(g);
  const std::vector<double> t = f.all_values();
  double best = 1.0;
  for (Mask s = 1; s < t.size(); ++s) {
    if (!f.in_domain(s)) continue;
    if (t[s] > 0.0) {
      best = std::max(best, gs[s] / t[s]);
    } else if (gs[s] > tol) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return best;
}

AdmissibleVector matching_core_vector(const Matrix& w) {
  const Assignment a = hungarian_duals(w);
  AdmissibleVector out{a.u, 1.0, Provenance::kMatchingDual};
  out.g.insert(out.g.end(), a.v.begin(), a.v.end());
  return out;
}

bool avg_submodular_shapley_check(const SetFunction& f, double tol) {
  const int n = f.size();
  guard(n, kShapleyCheckMax, "avg_submodular_shapley_check");
  const std::vector<double> t = f.all_values();
  const std::vector<double> c = shapley_weights(n);
  for (Mask tm = 0; tm < t.size(); ++tm) {
    double total = 0.0;
    for (Mask s = 1; s < t.size(); ++s) {
      const Mask st = s & tm;
      double inner = 0.0;
      for (Mask rest = st; rest; rest &= rest - 1) {
        const Mask bit = rest & (~rest + 1);
        inner += (t[s] - t[s & ~bit]) - (t[st] - t[st & ~bit]);
      }
      total += c[std::popcount(s)] * inner;
    }
    if (total > tol) return false;
  }
  return true;
}

}  // namespace score
