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

#include "score/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace score {
namespace {

constexpr double kPrefixTol = 1e-6;

std::vector<double> prefix_sums(const HypersimplexPoint& p) {
  const int n = p.n();
  if (p.k < 1 || p.k > n) throw ContractError("madow_sample: need 1 <= k <= n");
  std::vector<double> prefix(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const double v = p.p[i];
    if (!(v >= -kFeasTol && v <= 1.0 + kFeasTol)) {
      throw ContractError("madow_sample: p[" + std::to_string(i) + "] = " +
                          std::to_string(v) + " outside [0,1]");
    }
    prefix[i + 1] = prefix[i] + std::clamp(v, 0.0, 1.0);
  }
  if (std::abs(prefix[n] - p.k) > kPrefixTol) {
    throw ContractError("madow_sample: sum(p) = " + std::to_string(prefix[n]) +
                        " differs from k = " + std::to_string(p.k));
  }
  const double k = p.k;
  for (double& v : prefix) v = std::min(v, k);
  prefix[n] = k;
  return prefix;
}

std::vector<int> sweep(const std::vector<double>& prefix, int k, double u) {
  const int n = static_cast<int>(prefix.size()) - 1;
  std::vector<int> out;
  out.reserve(k);
  int i = 0;
  for (int j = 0; j < n && i < k; ++j) {
    // Each interval is at most one long, so it holds at most one target.
    if (u + i < prefix[j + 1]) {
      out.push_back(j);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::vector<int> madow_sample(const HypersimplexPoint& p, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw InputError("madow_sample: u must lie in [0,1)");
  return sweep(prefix_sums(p), p.k, u);
}

Draw draw(const HypersimplexPoint& p, Rng& rng) {
  Draw d;
  d.u = rng.uniform();
  d.set = madow_sample(p, d.u);
  return d;
}

std::vector<double> exact_inclusion_measure(const HypersimplexPoint& p) {
  const std::vector<double> prefix = prefix_sums(p);
  std::vector<double> cuts{0.0, 1.0};
  for (double v : prefix) cuts.push_back(v - std::floor(v));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> measure(p.n(), 0.0);
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double len = cuts[c + 1] - cuts[c];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
    for (int i : sweep(prefix, p.k, mid)) measure[i] += len;
  }
  return measure;
}

double exact_expected_linear(const HypersimplexPoint& p, const std::vector<double>& w) {
  const std::vector<double> m = exact_inclusion_measure(p);
  double s = 0.0;
  for (size_t i = 0; i < m.size(); ++i) s += m[i] * w[i];
  return s;
}

}  // namespace score
