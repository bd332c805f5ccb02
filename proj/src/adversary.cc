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

#include "score/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace score {
namespace {

constexpr std::pair<AdversaryKind, std::string_view> kKinds[] = {
    {AdversaryKind::kOnehot, "onehot-ensemble"},
    {AdversaryKind::kModularRandom, "modular-random"},
    {AdversaryKind::kModularDrift, "modular-drift"},
    {AdversaryKind::kCoverageDrift, "coverage-drift"},
    {AdversaryKind::kMatchingRandom, "matching-random"},
};

constexpr std::pair<HintMode, std::string_view> kHintModes[] = {
    {HintMode::kPerfect, "perfect"},
    {HintMode::kAdditiveNoise, "additive-noise"},
    {HintMode::kAdversarialFlip, "adversarial-flip"},
};

void reject_unknown(const nlohmann::json& j, std::initializer_list<std::string_view> keys,
                    const char* block) {
  if (!j.is_object()) throw InputError(std::string(block) + " block must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError(std::string(block) + ": unknown key '" + key + "'");
    }
  }
}

void scale_to_norm(std::vector<double>& w, double target) {
  const double nrm = norm2(w);
  if (nrm > 0.0) {
    for (double& x : w) x *= target / nrm;
  }
}

}  // namespace

std::string_view kind_name(AdversaryKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::string_view hint_mode_name(HintMode mode) {
  for (const auto& [m, name] : kHintModes) {
    if (m == mode) return name;
  }
  return "unknown";
}

AdversarySpec adversary_spec_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"kind", "G", "drift", "phases", "universe", "density", "w_max"}, "adversary");
  AdversarySpec s;
  const std::string kind = j.at("kind").get<std::string>();
  bool found = false;
  for (const auto& [k, name] : kKinds) {
    if (name == kind) {
      s.kind = k;
      found = true;
    }
  }
  if (!found) throw InputError("adversary: unknown kind '" + kind + "'");
  s.G = j.value("G", s.G);
  s.drift = j.value("drift", s.drift);
  s.phases = j.value("phases", s.phases);
  s.universe = j.value("universe", s.universe);
  s.density = j.value("density", s.density);
  s.w_max = j.value("w_max", s.w_max);
  if (!(s.G > 0.0)) throw InputError("adversary: G must be positive");
  if (!(s.drift >= 0.0 && s.drift <= 1.0)) throw InputError("adversary: drift must be in [0,1]");
  if (s.phases < 1) throw InputError("adversary: phases must be positive");
  if (s.universe < 1) throw InputError("adversary: universe must be positive");
  if (!(s.density > 0.0 && s.density <= 1.0)) throw InputError("adversary: density must be in (0,1]");
  if (!(s.w_max > 0.0)) throw InputError("adversary: w_max must be positive");
  return s;
}

nlohmann::json to_json(const AdversarySpec& s) {
  return {{"kind", std::string(kind_name(s.kind))}, {"G", s.G}, {"drift", s.drift},
          {"phases", s.phases}, {"universe", s.universe}, {"density", s.density},
          {"w_max", s.w_max}};
}

Adversary::Adversary(const AdversarySpec& spec, int n, long T, uint64_t seed)
    : spec_(spec), n_(n), T_(T), rng_(seed) {
  if (n < 1 || n > kMaxGroundSet) throw InputError("adversary: bad ground set size");
  if (T < 1) throw InputError("adversary: horizon must be positive");
  phase_len_ = (T + spec.phases - 1) / spec.phases;
  switch (spec.kind) {
    case AdversaryKind::kOnehot:
      M_ = 1.0;
      G_ = 1.0;
      break;
    case AdversaryKind::kModularRandom:
    case AdversaryKind::kModularDrift:
      M_ = std::sqrt(static_cast<double>(n)) * spec.G;
      G_ = spec.G;
      break;
    case AdversaryKind::kCoverageDrift:
      // Item weights sum to one; marginal vectors are nonnegative with
      // l1 norm f([n]).
      M_ = 1.0;
      G_ = 1.0;
      break;
    case AdversaryKind::kMatchingRandom:
      if (n % 2 != 0) throw InputError("matching-random needs an even ground set");
      M_ = (n / 2) * spec.w_max;
      G_ = M_ * std::numbers::sqrt2;
      break;
  }
}

void Adversary::redraw_phase() {
  if (spec_.kind == AdversaryKind::kModularDrift) {
    mean_.resize(n_);
    for (double& x : mean_) x = rng_.uniform();
  } else if (spec_.kind == AdversaryKind::kCoverageDrift) {
    families_.assign(n_, {});
    for (auto& fam : families_) {
      for (int a = 0; a < spec_.universe; ++a) {
        if (rng_.bernoulli(spec_.density)) fam.push_back(a);
      }
    }
  }
}

SetFunctionPtr Adversary::next() {
  if ((t_ % phase_len_) == 0) redraw_phase();
  ++t_;
  switch (spec_.kind) {
    case AdversaryKind::kOnehot: {
      std::vector<double> w(n_, 0.0);
      w[rng_.below(n_)] = 1.0;
      return std::make_shared<ModularFunction>(std::move(w));
    }
    case AdversaryKind::kModularRandom: {
      std::vector<double> w(n_);
      for (double& x : w) x = rng_.uniform();
      scale_to_norm(w, spec_.G * rng_.uniform(0.5, 1.0));
      return std::make_shared<ModularFunction>(std::move(w));
    }
    case AdversaryKind::kModularDrift: {
      std::vector<double> w(n_);
      for (int i = 0; i < n_; ++i) w[i] = (1.0 - spec_.drift) * mean_[i] + spec_.drift * rng_.uniform();
      scale_to_norm(w, spec_.G);
      return std::make_shared<ModularFunction>(std::move(w));
    }
    case AdversaryKind::kCoverageDrift: {
      std::vector<double> weights(spec_.universe);
      for (double& x : weights) x = rng_.uniform();
      const double total = sum(weights);
      for (double& x : weights) x /= total;
      return std::make_shared<CoverageFunction>(spec_.universe, families_, std::move(weights));
    }
    case AdversaryKind::kMatchingRandom: {
      const int m = n_ / 2;
      Matrix w(m, m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) w(i, j) = rng_.uniform(0.0, spec_.w_max);
      }
      return std::make_shared<MatchingRewardFunction>(std::move(w));
    }
  }
  throw ContractError("adversary: unhandled kind");
}

std::vector<ModularFunction> onehot_ensemble(int n, long T, Rng& rng) {
  std::vector<ModularFunction> out;
  out.reserve(T);
  for (long t = 0; t < T; ++t) {
    std::vector<double> w(n, 0.0);
    w[rng.below(n)] = 1.0;
    out.emplace_back(std::move(w));
  }
  return out;
}

HintSpec hint_spec_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"mode", "noise_l2"}, "hint");
  HintSpec s;
  const std::string mode = j.value("mode", std::string("additive-noise"));
  bool found = false;
  for (const auto& [m, name] : kHintModes) {
    if (name == mode) {
      s.mode = m;
      found = true;
    }
  }
  if (!found) throw InputError("hint: unknown mode '" + mode + "'");
  s.noise_l2 = j.value("noise_l2", 0.0);
  if (!(s.noise_l2 >= 0.0) || !std::isfinite(s.noise_l2)) {
    throw InputError("hint: noise_l2 must be finite and nonnegative");
  }
  return s;
}

nlohmann::json to_json(const HintSpec& s) {
  return {{"mode", std::string(hint_mode_name(s.mode))}, {"noise_l2", s.noise_l2}};
}

std::vector<double> make_hint(std::span<const double> fvec, const HintSpec& spec, Rng& rng) {
  std::vector<double> h(fvec.begin(), fvec.end());
  switch (spec.mode) {
    case HintMode::kPerfect:
      break;
    case HintMode::kAdversarialFlip:
      for (double& x : h) x = -x;
      break;
    case HintMode::kAdditiveNoise: {
      if (spec.noise_l2 == 0.0) break;
      std::vector<double> dir(h.size());
      double nrm = 0.0;
      while (!(nrm > 0.0)) {
        for (double& x : dir) x = rng.normal();
        nrm = norm2(dir);
      }
      for (size_t i = 0; i < h.size(); ++i) h[i] += spec.noise_l2 * dir[i] / nrm;
      break;
    }
  }
  return h;
}

std::vector<std::vector<double>> generate_hints(const std::vector<std::vector<double>>& fvecs,
                                                const HintSpec& spec, Rng& rng) {
  std::vector<std::vector<double>> out;
  out.reserve(fvecs.size());
  for (const auto& f : fvecs) out.push_back(make_hint(f, spec, rng));
  return out;
}

}  // namespace score
