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

#ifndef SCORE_ADVERSARY_HPP_
#define SCORE_ADVERSARY_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "score/common.hpp"
#include "score/setfn.hpp"

namespace score {

enum class AdversaryKind {
  kOnehot,          // indicator of one uniform element per round
  kModularRandom,   // fresh U[0,1]^n weights, norm G * U(0.5, 1)
  kModularDrift,    // per-phase mean plus per-round noise, norm G
  kCoverageDrift,   // per-phase random families, per-round item weights
  kMatchingRandom,  // fresh U[0, w_max] bipartite weights, n = 2m
};

std::string_view kind_name(AdversaryKind kind);

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kModularRandom;
  double G = 1.0;
  // Weight of the per-round noise in modular-drift.
  double drift = 0.3;
  int phases = 10;
  // Coverage universe size and per-item membership probability.
  int universe = 40;
  double density = 0.15;
  double w_max = 1.0;
};

// Keys: kind, G, drift, phases, universe, density, w_max.
AdversarySpec adversary_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AdversarySpec& spec);

// Oblivious reward sequence; the t-th call to next() returns f_t.
class Adversary {
 public:
  Adversary(const AdversarySpec& spec, int n, long T, uint64_t seed);

  const AdversarySpec& spec() const { return spec_; }
  int n() const { return n_; }
  long horizon() const { return T_; }
  long phase_length() const { return phase_len_; }
  // Bounds every emitted f_t from above.
  double value_bound() const { return M_; }
  // Bounds the l2 norm of the default admissible vector of every f_t.
  double norm_bound() const { return G_; }

  SetFunctionPtr next();

 private:
  void redraw_phase();

  AdversarySpec spec_;
  int n_;
  long T_;
  long phase_len_;
  double M_ = 0.0;
  double G_ = 0.0;
  Rng rng_;
  long t_ = 0;
  std::vector<double> mean_;
  std::vector<std::vector<int>> families_;
};

std::vector<ModularFunction> onehot_ensemble(int n, long T, Rng& rng);

enum class HintMode { kPerfect, kAdditiveNoise, kAdversarialFlip };

std::string_view hint_mode_name(HintMode mode);

struct HintSpec {
  HintMode mode = HintMode::kPerfect;
  double noise_l2 = 0.0;
};

// Keys: mode, noise_l2.
HintSpec hint_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HintSpec& spec);

// perfect: h = f; additive-noise: h = f + noise_l2 * (uniform direction);
// adversarial-flip: h = -f.
std::vector<double> make_hint(std::span<const double> fvec, const HintSpec& spec, Rng& rng);
std::vector<std::vector<double>> generate_hints(const std::vector<std::vector<double>>& fvecs,
                                                const HintSpec& spec, Rng& rng);

}  // namespace score

#endif  // SCORE_ADVERSARY_HPP_
