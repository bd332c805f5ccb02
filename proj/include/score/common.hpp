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

#ifndef SCORE_COMMON_HPP_
#define SCORE_COMMON_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace score {

// Malformed caller input (non-finite values, bad sizes, out-of-range args).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exhaustive enumeration was requested above its size guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// SplitMix64 finalizer; used to derive independent stream seeds.
uint64_t mix_seed(uint64_t x);
uint64_t derive_seed(uint64_t seed, uint64_t stream);

// Seedable generator with reproducible stream semantics.
//
// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
// implements every derived distribution locally so that traces are
// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t below(uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }
  // Standard normal via Box-Muller (one value per call).
  double normal();
  // Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
};

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm1(std::span<const double> a);
double sum(std::span<const double> a);

// ln(n/k); zero when k == n.
double log_ratio(int n, int k);

// Throws InputError if any entry is NaN or infinite.
void require_finite(std::span<const double> v, const char* what);

}  // namespace score

#endif  // SCORE_COMMON_HPP_
