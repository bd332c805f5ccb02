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

#ifndef SCORE_ASSIGNMENT_HPP_
#define SCORE_ASSIGNMENT_HPP_

#include <vector>

#include "score/common.hpp"

namespace score {

struct Assignment {
  // row_to_col[i] is the column matched to row i.
  std::vector<int> row_to_col;
  double value = 0.0;
  // Optimal duals: u_i + v_j <= w_ij, tight on matched pairs, sum = value.
  std::vector<double> u;
  std::vector<double> v;
  // Whether u and v are both entrywise nonnegative.
  bool nonnegative = false;
};

// Minimum-cost perfect matching of a square matrix (shortest augmenting
// paths with potentials, O(m^3)). Duals are returned as produced.
Assignment min_cost_assignment(const Matrix& w);

// As min_cost_assignment on a nonnegative matrix, with the duals moved along
// u + d, v - d. Among the shifts that make both nonnegative the one of least
// Euclidean norm is used. When no such shift exists the least-norm shift is
// applied and `nonnegative` is false.
Assignment hungarian_duals(const Matrix& w);

}  // namespace score

#endif  // SCORE_ASSIGNMENT_HPP_
