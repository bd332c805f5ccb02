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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "score/assignment.hpp"

namespace score {
namespace {

constexpr int kTableMax = 26;
constexpr int kCheckMax = 14;
constexpr int kRhoMax = 12;
constexpr double kZeroGain = 1e-12;

void guard(int n, int limit, const char* what) {
  if (n > limit) {
    throw SizeError(std::string(what) + ": n = " + std::to_string(n) +
                    " exceeds the enumeration limit " + std::to_string(limit));
  }
}

std::vector<double> modular_table(const std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  guard(n, kTableMax, "modular_table");
  std::vector<double> t(size_t{1} << n, 0.0);
  for (Mask s = 1; s < t.size(); ++s) {
    t[s] = t[s & (s - 1)] + w[std::countr_zero(s)];
  }
  return t;
}

}  // namespace

Mask mask_of(std::span<const int> set, int n) {
  Mask m = 0;
  for (int i : set) {
    if (i < 0 || i >= n) throw InputError("set index out of range: " + std::to_string(i));
    if ((m >> i) & 1) throw InputError("repeated set index: " + std::to_string(i));
    m |= Mask{1} << i;
  }
  return m;
}

std::vector<int> indices_of(Mask mask) {
  std::vector<int> out;
  out.reserve(std::popcount(mask));
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

SetFunction::SetFunction(int n) : n_(n) {
  if (n < 1 || n > kMaxGroundSet) {
    throw InputError("set function ground set must have 1.." + std::to_string(kMaxGroundSet) +
                     " elements, got " + std::to_string(n));
  }
}

bool SetFunction::in_domain(Mask) const { return true; }

std::vector<double> SetFunction::all_values() const {
  guard(n_, kTableMax, "all_values");
  std::vector<double> t(size_t{1} << n_);
  for (Mask s = 0; s < t.size(); ++s) t[s] = value_mask(s);
  return t;
}

double SetFunction::full_value() const { return value_mask(full_mask()); }

ModularFunction::ModularFunction(std::vector<double> weights)
    : SetFunction(static_cast<int>(weights.size())), w_(std::move(weights)) {
  require_finite(w_, "ModularFunction");
}

double ModularFunction::value_mask(Mask mask) const {
  double s = 0.0;
  while (mask) {
    s += w_[std::countr_zero(mask)];
    mask &= mask - 1;
  }
  return s;
}

double ModularFunction::value_bound() const {
  double s = 0.0;
  for (double x : w_) s += std::max(x, 0.0);
  return s;
}

std::vector<double> ModularFunction::all_values() const { return modular_table(w_); }

CoverageFunction::CoverageFunction(int universe, std::vector<std::vector<int>> sets,
                                   std::vector<double> universe_weights)
    : SetFunction(static_cast<int>(sets.size())),
      universe_(universe),
      words_((universe + 63) / 64),
      sets_(std::move(sets)),
      weights_(std::move(universe_weights)) {
  if (universe < 0) throw InputError("CoverageFunction: negative universe size");
  if (weights_.empty()) weights_.assign(universe, 1.0);
  if (static_cast<int>(weights_.size()) != universe) {
    throw InputError("CoverageFunction: need one weight per universe item");
  }
  require_finite(weights_, "CoverageFunction");
  for (double x : weights_) {
    if (x < 0.0) throw InputError("CoverageFunction: negative universe weight");
  }
  bits_.assign(sets_.size() * words_, 0);
  for (size_t i = 0; i < sets_.size(); ++i) {
    for (int a : sets_[i]) {
      if (a < 0 || a >= universe) throw InputError("CoverageFunction: item out of range");
      bits_[i * words_ + a / 64] |= uint64_t{1} << (a % 64);
    }
  }
}

double CoverageFunction::weight_of(std::span<const uint64_t> bits) const {
  double s = 0.0;
  for (int w = 0; w < words_; ++w) {
    uint64_t b = bits[w];
    while (b) {
      s += weights_[w * 64 + std::countr_zero(b)];
      b &= b - 1;
    }
  }
  return s;
}

double CoverageFunction::value_mask(Mask mask) const {
  std::vector<uint64_t> acc(words_, 0);
  while (mask) {
    const int i = std::countr_zero(mask);
    for (int w = 0; w < words_; ++w) acc[w] |= bits_[i * words_ + w];
    mask &= mask - 1;
  }
  return weight_of(acc);
}

double CoverageFunction::value_bound() const { return full_value(); }

std::vector<double> CoverageFunction::all_values() const {
  const int n = size();
  guard(n, kTableMax, "all_values");
  const size_t count = size_t{1} << n;
  std::vector<uint64_t> unions(count * words_, 0);
  std::vector<double> t(count, 0.0);
  for (Mask s = 1; s < count; ++s) {
    const Mask rest = s & (s - 1);
    const int i = std::countr_zero(s);
    for (int w = 0; w < words_; ++w) {
      unions[s * words_ + w] = unions[rest * words_ + w] | bits_[i * words_ + w];
    }
    t[s] = weight_of(std::span<const uint64_t>(unions.data() + s * words_, words_));
  }
  return t;
}

MatchingRewardFunction::MatchingRewardFunction(Matrix weights)
    : SetFunction(2 * weights.rows()), w_(std::move(weights)) {
  if (w_.rows() != w_.cols()) throw InputError("MatchingRewardFunction: matrix must be square");
  for (int i = 0; i < w_.rows(); ++i) {
    for (int j = 0; j < w_.cols(); ++j) {
      if (!(w_(i, j) >= 0.0) || !std::isfinite(w_(i, j))) {
        throw InputError("MatchingRewardFunction: weights must be finite and nonnegative");
      }
    }
  }
}

bool MatchingRewardFunction::in_domain(Mask mask) const {
  const int m = side();
  const Mask left = mask & ((Mask{1} << m) - 1);
  const Mask right = mask >> m;
  return std::popcount(left) == std::popcount(right);
}

double MatchingRewardFunction::value_mask(Mask mask) const {
  if (mask == 0 || !in_domain(mask)) return 0.0;
  const int m = side();
  const std::vector<int> rows = indices_of(mask & ((Mask{1} << m) - 1));
  const std::vector<int> cols = indices_of(mask >> m);
  const int r = static_cast<int>(rows.size());
  Matrix sub(r, r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) sub(a, b) = w_(rows[a], cols[b]);
  }
  return min_cost_assignment(sub).value;
}

double MatchingRewardFunction::value_bound() const {
  double wmax = 0.0;
  for (int i = 0; i < side(); ++i) {
    for (int j = 0; j < side(); ++j) wmax = std::max(wmax, w_(i, j));
  }
  return side() * wmax;
}

TableSetFunction::TableSetFunction(int n, std::vector<double> values)
    : SetFunction(n), values_(std::move(values)) {
  guard(n, kTableMax, "TableSetFunction");
  if (values_.size() != (size_t{1} << n)) {
    throw InputError("TableSetFunction: need 2^n values");
  }
  require_finite(values_, "TableSetFunction");
  if (values_[0] != 0.0) throw InputError("TableSetFunction: f(empty) must be 0");
  bound_ = *std::max_element(values_.begin(), values_.end());
}

CallbackSetFunction::CallbackSetFunction(int n, std::function<double(Mask)> fn, double bound)
    : SetFunction(n), fn_(std::move(fn)), bound_(bound) {}

double distance_sup(const SetFunction& f, const ModularFunction& h, int n_enum_max) {
  const int n = f.size();
  if (h.size() != n) throw InputError("distance_sup: size mismatch");
  if (const auto* mod = dynamic_cast<const ModularFunction*>(&f)) {
    double pos = 0.0, neg = 0.0;
    for (int i = 0; i < n; ++i) {
      const double nu = mod->weights()[i] - h.weights()[i];
      if (nu > 0.0) pos += nu;
      else neg -= nu;
    }
    return std::max(pos, neg);
  }
  guard(n, std::min(n_enum_max, kTableMax), "distance_sup");
  const std::vector<double> fv = f.all_values();
  const std::vector<double> hv = h.all_values();
  double best = 0.0;
  for (size_t s = 0; s < fv.size(); ++s) best = std::max(best, std::abs(fv[s] - hv[s]));
  return best;
}

bool check_submodular(const SetFunction& f, double tol) {
  const int n = f.size();
  guard(n, kCheckMax, "check_submodular");
  const std::vector<double> t = f.all_values();
  const Mask full = f.full_mask();
  for (Mask b = 0; b <= full; ++b) {
    for (Mask rest = full & ~b; rest; rest &= rest - 1) {
      const Mask i = rest & (~rest + 1);
      const double gain_b = t[b | i] - t[b];
      // All submasks a of b, including b itself and the empty set.
      for (Mask a = b;; a = (a - 1) & b) {
        if (t[a | i] - t[a] < gain_b - tol) return false;
        if (a == 0) break;
      }
    }
  }
  return true;
}

bool check_monotone(const SetFunction& f, double tol) {
  const int n = f.size();
  guard(n, kCheckMax, "check_monotone");
  const std::vector<double> t = f.all_values();
  const Mask full = f.full_mask();
  for (Mask big = 0; big <= full; ++big) {
    for (Mask s = big;; s = (s - 1) & big) {
      if (t[s] > t[big] + tol) return false;
      if (s == 0) break;
    }
  }
  return true;
}

RhoEstimate estimate_rho(const SetFunction& f) {
  const int n = f.size();
  guard(n, kRhoMax, "estimate_rho");
  const std::vector<double> t = f.all_values();
  const Mask full = f.full_mask();
  RhoEstimate out;
  for (Mask b = 0; b <= full; ++b) {
    for (Mask rest = full & ~b; rest; rest &= rest - 1) {
      const Mask i = rest & (~rest + 1);
      const double den = t[b | i] - t[b];
      if (!(den > kZeroGain)) continue;
      for (Mask a = b;; a = (a - 1) & b) {
        const double num = t[a | i] - t[a];
        if (num <= kZeroGain) {
          out.rho = 0.0;
          out.not_rho_submodular = true;
          return out;
        }
        out.rho = std::min(out.rho, num / den);
        if (a == 0) break;
      }
    }
  }
  return out;
}

std::unique_ptr<SetFunction> reward_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, _] : j.items()) {
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) ==
          keys.end()) {
        throw InputError("reward '" + kind + "': unknown key '" + key + "'");
      }
    }
  };
  if (kind == "modular") {
    allow({"kind", "weights"});
    return std::make_unique<ModularFunction>(j.at("weights").get<std::vector<double>>());
  }
  if (kind == "coverage") {
    allow({"kind", "universe", "sets", "weights"});
    std::vector<double> weights;
    if (j.contains("weights")) weights = j.at("weights").get<std::vector<double>>();
    return std::make_unique<CoverageFunction>(
        j.at("universe").get<int>(), j.at("sets").get<std::vector<std::vector<int>>>(),
        std::move(weights));
  }
  if (kind == "matching") {
    allow({"kind", "weights"});
    const auto rows = j.at("weights").get<std::vector<std::vector<double>>>();
    Matrix w(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size()) throw InputError("matching: matrix must be square");
      for (size_t c = 0; c < rows.size(); ++c) w(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    }
    return std::make_unique<MatchingRewardFunction>(std::move(w));
  }
  if (kind == "table") {
    allow({"kind", "n", "values"});
    return std::make_unique<TableSetFunction>(j.at("n").get<int>(),
                                              j.at("values").get<std::vector<double>>());
  }
  throw InputError("unknown reward kind '" + kind + "'");
}

}  // namespace score
