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

#ifndef SCORE_SAMPLING_HPP_
#define SCORE_SAMPLING_HPP_

#include <vector>

#include "score/common.hpp"
#include "score/hypersimplex.hpp"

namespace score {

// Systematic (Madow) sampling. Element j is selected iff some u + i, with
// i in {0, ..., k-1}, falls in [P_{j-1}, P_j), where P are the prefix sums of
// p. Returns exactly k sorted 0-based indices.
std::vector<int> madow_sample(const HypersimplexPoint& p, double u);

struct Draw {
  std::vector<int> set;
  double u = 0.0;
};

Draw draw(const HypersimplexPoint& p, Rng& rng);

// Lebesgue measure of {u in [0,1) : i selected} for every i, computed by
// enumerating the points where the selected set changes.
std::vector<double> exact_inclusion_measure(const HypersimplexPoint& p);

// Expected value of a linear reward under the sampling design, integrated
// exactly over u.
double exact_expected_linear(const HypersimplexPoint& p, const std::vector<double>& w);

}  // namespace score

#endif  // SCORE_SAMPLING_HPP_
