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

#ifndef SCORE_SETFN_HPP_
#define SCORE_SETFN_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "json.hpp"
#include "score/common.hpp"

namespace score {

using Mask = uint64_t;

inline constexpr int kMaxGroundSet = 62;
inline constexpr int kDefaultEnumMax = 20;

Mask mask_of(std::span<const int> set, int n);
std::vector<int> indices_of(Mask mask);

// Normalized set function on the ground set {0, ..., n-1}.
class SetFunction {
 public:
  explicit SetFunction(int n);
  virtual ~SetFunction() = default;

  int size() const { return n_; }
  double value(std::span<const int> set) const { return value_mask(mask_of(set, n_)); }
  virtual double value_mask(Mask mask) const = 0;
  // Upper bound M on every value.
  virtual double value_bound() const = 0;
  // Subsets on which the function is meaningful. Core conditions are only
  // imposed on these.
  virtual bool in_domain(Mask mask) const;
  // Values of all 2^n subsets indexed by mask. n <= 26.
  virtual std::vector<double> all_values() const;
  double full_value() const;
  Mask full_mask() const { return (Mask{1} << n_) - 1; }

 private:
  int n_;
};

using SetFunctionPtr = std::shared_ptr<const SetFunction>;

class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights);

  const std::vector<double>& weights() const { return w_; }
  double value_mask(Mask mask) const override;
  double value_bound() const override;
  std::vector<double> all_values() const override;

 private:
  std::vector<double> w_;
};

// Weighted coverage f(S) = w(union_{i in S} U_i) over a finite universe.
class CoverageFunction final : public SetFunction {
 public:
  CoverageFunction(int universe, std::vector<std::vector<int>> sets,
                   std::vector<double> universe_weights = {});

  int universe() const { return universe_; }
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  const std::vector<double>& universe_weights() const { return weights_; }
  double value_mask(Mask mask) const override;
  double value_bound() const override;
  std::vector<double> all_values() const override;

 private:
  double weight_of(std::span<const uint64_t> bits) const;

  int universe_;
  int words_;
  std::vector<std::vector<int>> sets_;
  std::vector<double> weights_;
  std::vector<uint64_t> bits_;  // n rows of words_ words
};

// Bipartite min-cost perfect matching reward. Elements 0..m-1 are the left
// side and m..2m-1 the right side. Unbalanced subsets score 0 and lie outside
// the domain.
class MatchingRewardFunction final : public SetFunction {
 public:
  explicit MatchingRewardFunction(Matrix weights);

  const Matrix& weights() const { return w_; }
  int side() const { return w_.rows(); }
  double value_mask(Mask mask) const override;
  double value_bound() const override;
  bool in_domain(Mask mask) const override;

 private:
  Matrix w_;
};

class TableSetFunction final : public SetFunction {
 public:
  TableSetFunction(int n, std::vector<double> values);

  double value_mask(Mask mask) const override { return values_[mask]; }
  double value_bound() const override { return bound_; }
  std::vector<double> all_values() const override { return values_; }

 private:
  std::vector<double> values_;
  double bound_;
};

class CallbackSetFunction final : public SetFunction {
 public:
  CallbackSetFunction(int n, std::function<double(Mask)> fn, double bound);

  double value_mask(Mask mask) const override { return fn_(mask); }
  double value_bound() const override { return bound_; }

 private:
  std::function<double(Mask)> fn_;
  double bound_;
};

// max over all subsets S of |f(S) - h(S)|. Closed form when f is modular;
// otherwise requires n <= n_enum_max.
double distance_sup(const SetFunction& f, const ModularFunction& h,
                    int n_enum_max = kDefaultEnumMax);

// Exhaustive checks over all (A subset B, i not in B) and all S subset T.
// n <= 14.
bool check_submodular(const SetFunction& f, double tol = 1e-9);
bool check_monotone(const SetFunction& f, double tol = 1e-9);

struct RhoEstimate {
  double rho = 1.0;
  // Some marginal gain vanishes on a smaller set while staying positive on a
  // larger one.
  bool not_rho_submodular = false;
};

// Largest rho in (0, 1] with rho (f(B+i) - f(B)) <= f(A+i) - f(A) over all
// triples. n <= 12.
RhoEstimate estimate_rho(const SetFunction& f);

// {"kind": "modular", "weights": [...]}
// {"kind": "coverage", "universe": u, "sets": [[...], ...], "weights": [...]}
// {"kind": "matching", "weights": [[...], ...]}
// {"kind": "table", "n": n, "values": [...]}
std::unique_ptr<SetFunction> reward_from_json(const nlohmann::json& j);

}  // namespace score

#endif  // SCORE_SETFN_HPP_
