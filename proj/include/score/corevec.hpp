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

// Admissible (alpha-core) vectors: constructions and brute-force checks.
//
// A vector g is in the alpha-core of f when sum_{i in S} g_i <= alpha f(S)
// for every S in the domain of f and sum_i g_i = f([n]).

#ifndef SCORE_COREVEC_HPP_
#define SCORE_COREVEC_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "score/assignment.hpp"
#include "score/common.hpp"
#include "score/setfn.hpp"

namespace score {

inline constexpr double kCoreTol = 1e-7;

enum class Provenance { kMarginal, kDictator, kShapley, kMatchingDual, kExternal };

std::string_view provenance_name(Provenance p);

struct AdmissibleVector {
  std::vector<double> g;
  std::optional<double> alpha;
  Provenance provenance = Provenance::kExternal;
};

// g_{pi(i)} = f(pi(0..i)) - f(pi(0..i-1)). alpha is passed through as the tag.
AdmissibleVector marginal_vector(const SetFunction& f, std::span<const int> perm,
                                 std::optional<double> alpha = std::nullopt);

std::vector<int> identity_permutation(int n);

// Mean of marginal vectors over num_perms uniform permutations.
std::vector<double> shapley_mc(const SetFunction& f, int num_perms, Rng& rng);

// Exact Shapley value by the subset formula. n <= 20.
std::vector<double> shapley_exact(const SetFunction& f);

// Lowest index i with f({i}) >= m.
std::optional<int> find_dictator(const SetFunction& f, double m);

// M e_{i*} with M = f([n]), tagged alpha = M / m.
AdmissibleVector dictator_vector(const SetFunction& f, int i_star, double m);

// n <= 20.
bool core_membership(std::span<const double> g, const SetFunction& f, double alpha,
                     double tol = kCoreTol);

// Smallest alpha >= 1 with sum_{i in S} g_i <= alpha f(S) on the domain;
// +infinity when g puts positive mass on a zero-valued set. n <= 20.
double tightest_alpha(std::span<const double> g, const SetFunction& f, double tol = kCoreTol);

// Duals (u, v) of the assignment problem, concatenated over the ground set
// of MatchingRewardFunction(w). Tagged alpha = 1.
AdmissibleVector matching_core_vector(const Matrix& w);

// Evaluates the Izawa-Takahashi sums for every T; true iff all are <= tol,
// which holds exactly when the Shapley value lies in the core. n <= 10.
bool avg_submodular_shapley_check(const SetFunction& f, double tol = 1e-9);

}  // namespace score

#endif  // SCORE_COREVEC_HPP_
