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

#include "score/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace score {

Assignment min_cost_assignment(const Matrix& w) {
  const int m = w.rows();
  if (m != w.cols()) throw InputError("min_cost_assignment: matrix must be square");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!std::isfinite(w(i, j))) throw InputError("min_cost_assignment: non-finite weight");
    }
  }
  Assignment out;
  if (m == 0) {
    out.nonnegative = true;
    return out;
  }

  // 1-based potentials; column 0 is a virtual root.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> owner(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (int i = 1; i <= m; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = w(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  out.row_to_col.assign(m, -1);
  for (int j = 1; j <= m; ++j) out.row_to_col[owner[j] - 1] = j - 1;
  for (int i = 0; i < m; ++i) out.value += w(i, out.row_to_col[i]);
  out.u.assign(u.begin() + 1, u.end());
  out.v.assign(v.begin() + 1, v.end());
  out.nonnegative = *std::min_element(out.u.begin(), out.u.end()) >= 0.0 &&
                    *std::min_element(out.v.begin(), out.v.end()) >= 0.0;
  return out;
}

Assignment hungarian_duals(const Matrix& w) {
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) {
      if (w(i, j) < 0.0) throw InputError("hungarian_duals: negative weight");
    }
  }
  Assignment a = min_cost_assignment(w);
  const int m = static_cast<int>(a.u.size());
  if (m == 0) return a;

  const double lo = -*std::min_element(a.u.begin(), a.u.end());
  const double hi = *std::min_element(a.v.begin(), a.v.end());
  const double least_norm = (sum(a.v) - sum(a.u)) / (2.0 * m);
  double shift;
  if (lo <= hi) {
    shift = std::clamp(least_norm, lo, hi);
    a.nonnegative = true;
  } else {
    shift = least_norm;
    a.nonnegative = false;
  }
  for (double& x : a.u) x += shift;
  for (double& x : a.v) x -= shift;
  if (a.nonnegative) {
    // Rounding in the shift must not leave a tiny negative entry.
    for (double& x : a.u) x = std::max(x, 0.0);
    for (double& x : a.v) x = std::max(x, 0.0);
  }
  return a;
}

}  // namespace score
