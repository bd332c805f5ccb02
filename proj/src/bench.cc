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

#include "score/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "score/corevec.hpp"

namespace score {
namespace {

template <typename E>
struct Named {
  E value;
  const char* name;
};

constexpr Named<PolicyKind> kPolicyKinds[] = {{PolicyKind::kScore, "score"},
                                              {PolicyKind::kOftrl, "oftrl"},
                                              {PolicyKind::kSemibandit, "semibandit"},
                                              {PolicyKind::kPriced, "priced"}};

constexpr Named<CoreKind> kCoreKinds[] = {{CoreKind::kAuto, "auto"},
                                          {CoreKind::kMarginal, "marginal"},
                                          {CoreKind::kMarginalIdentity, "marginal-identity"},
                                          {CoreKind::kShapleyMc, "shapley-mc"},
                                          {CoreKind::kDictator, "dictator"},
                                          {CoreKind::kMatchingDual, "matching-dual"}};

constexpr Named<ProjectionMode> kModes[] = {{ProjectionMode::kExact, "exact"},
                                            {ProjectionMode::kAfw, "afw"}};

template <typename E, size_t N>
E parse_enum(const Named<E> (&table)[N], const std::string& s, const char* what) {
  for (const auto& e : table) {
    if (s == e.name) return e.value;
  }
  throw InputError(std::string(what) + ": unknown value '" + s + "'");
}

template <typename E, size_t N>
std::string enum_name(const Named<E> (&table)[N], E v) {
  for (const auto& e : table) {
    if (e.value == v) return e.name;
  }
  return "unknown";
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<std::string_view> keys,
                    const char* block) {
  if (!j.is_object()) throw InputError(std::string(block) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError(std::string(block) + ": unknown key '" + key + "'");
    }
  }
}

// Accepts integers and integral floating values such as 1e4.
long get_count(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = j.at(key);
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long>(d);
  }
  throw InputError(std::string("config: '") + key + "' must be an integer");
}

PolicySpec policy_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"kind", "eta", "epsilon", "sigma", "cost", "mode", "afw_max_iters",
                     "shadow_exact", "core", "shapley_samples", "distance"},
                 "policy");
  PolicySpec p;
  p.kind = parse_enum(kPolicyKinds, j.at("kind").get<std::string>(), "policy.kind");
  if (j.contains("eta")) p.eta = j.at("eta").get<double>();
  if (j.contains("epsilon")) p.epsilon = j.at("epsilon").get<double>();
  if (j.contains("sigma")) p.sigma = j.at("sigma").get<double>();
  p.cost = j.value("cost", p.cost);
  if (j.contains("mode")) p.mode = parse_enum(kModes, j.at("mode").get<std::string>(), "policy.mode");
  if (j.contains("afw_max_iters")) p.afw_max_iters = static_cast<int>(get_count(j, "afw_max_iters"));
  p.shadow_exact = j.value("shadow_exact", p.shadow_exact);
  if (j.contains("core")) p.core = parse_enum(kCoreKinds, j.at("core").get<std::string>(), "policy.core");
  if (j.contains("shapley_samples")) p.shapley_samples = static_cast<int>(get_count(j, "shapley_samples"));
  p.distance = j.value("distance", p.distance);

  if (p.eta && !(*p.eta > 0.0)) throw InputError("policy.eta must be positive");
  if (p.epsilon && !(*p.epsilon > 0.0 && *p.epsilon <= 1.0)) {
    throw InputError("policy.epsilon must lie in (0,1]");
  }
  if (p.sigma && !(*p.sigma > 0.0)) throw InputError("policy.sigma must be positive");
  if (!(p.cost >= 0.0)) throw InputError("policy.cost must be nonnegative");
  if (p.afw_max_iters < 0) throw InputError("policy.afw_max_iters must be nonnegative");
  if (p.shapley_samples < 1) throw InputError("policy.shapley_samples must be positive");
  return p;
}

nlohmann::json policy_to_json(const PolicySpec& p) {
  nlohmann::json j = {{"kind", enum_name(kPolicyKinds, p.kind)},
                      {"cost", p.cost},
                      {"mode", enum_name(kModes, p.mode)},
                      {"afw_max_iters", p.afw_max_iters},
                      {"shadow_exact", p.shadow_exact},
                      {"core", enum_name(kCoreKinds, p.core)},
                      {"shapley_samples", p.shapley_samples},
                      {"distance", p.distance}};
  if (p.eta) j["eta"] = *p.eta;
  if (p.epsilon) j["epsilon"] = *p.epsilon;
  if (p.sigma) j["sigma"] = *p.sigma;
  return j;
}

double value_bound_of(const ExperimentConfig& cfg) {
  if (cfg.M) return *cfg.M;
  return Adversary(cfg.adversary, cfg.n, cfg.T, 0).value_bound();
}

double norm_bound_of(const ExperimentConfig& cfg) {
  return cfg.G ? *cfg.G : cfg.alpha * value_bound_of(cfg) * std::numbers::sqrt2;
}

AdmissibleVector checked_core(const CoreStrategy& core, const SetFunction& f) {
  try {
    return core(f);
  } catch (const std::exception& e) {
    throw ContractError(std::string("core strategy failed: ") + e.what());
  }
}

CoreStrategy make_core_strategy(const PolicySpec& spec, Rng& rng) {
  const int samples = spec.shapley_samples;
  auto marginal_random = [&rng](const SetFunction& f) {
    const std::vector<int> perm = rng.permutation(f.size());
    return marginal_vector(f, perm);
  };
  auto matching = [](const SetFunction& f) {
    const auto* m = dynamic_cast<const MatchingRewardFunction*>(&f);
    if (m == nullptr) throw InputError("matching-dual needs a matching reward");
    return matching_core_vector(m->weights());
  };
  switch (spec.core) {
    case CoreKind::kAuto:
      return [marginal_random, matching](const SetFunction& f) {
        if (const auto* mod = dynamic_cast<const ModularFunction*>(&f)) {
          return AdmissibleVector{mod->weights(), 1.0, Provenance::kMarginal};
        }
        if (dynamic_cast<const MatchingRewardFunction*>(&f) != nullptr) return matching(f);
        return marginal_random(f);
      };
    case CoreKind::kMarginal:
      return marginal_random;
    case CoreKind::kMarginalIdentity:
      return [](const SetFunction& f) { return marginal_vector(f, identity_permutation(f.size())); };
    case CoreKind::kShapleyMc:
      return [&rng, samples](const SetFunction& f) {
        return AdmissibleVector{shapley_mc(f, samples, rng), std::nullopt, Provenance::kShapley};
      };
    case CoreKind::kDictator:
      return [](const SetFunction& f) {
        int best = 0;
        double m = f.value_mask(1);
        for (int i = 1; i < f.size(); ++i) {
          const double v = f.value_mask(Mask{1} << i);
          if (v > m) {
            m = v;
            best = i;
          }
        }
        if (!(m > 0.0)) {
          return AdmissibleVector{std::vector<double>(f.size(), 0.0), 1.0, Provenance::kDictator};
        }
        return dictator_vector(f, best, m);
      };
    case CoreKind::kMatchingDual:
      return matching;
  }
  throw ContractError("unhandled core strategy");
}

double bound_ratio(double value, double bound) {
  if (bound > 0.0) return value / bound;
  return value <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"schema", "n", "k", "T", "alpha", "M", "G", "seed", "replicas", "output",
                     "threads", "policy", "adversary", "hint"},
                 "config");
  if (j.value("schema", std::string()) != kConfigSchema) {
    throw InputError(std::string("config: schema must be \"") + kConfigSchema + "\"");
  }
  ExperimentConfig c;
  c.n = static_cast<int>(get_count(j, "n"));
  c.k = static_cast<int>(get_count(j, "k"));
  c.T = get_count(j, "T");
  c.alpha = j.value("alpha", c.alpha);
  if (j.contains("M")) c.M = j.at("M").get<double>();
  if (j.contains("G")) c.G = j.at("G").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
  if (j.contains("replicas")) c.replicas = static_cast<int>(get_count(j, "replicas"));
  c.output = j.value("output", c.output);
  if (j.contains("threads")) c.threads = static_cast<int>(get_count(j, "threads"));
  c.policy = policy_from_json(j.at("policy"));
  c.adversary = adversary_spec_from_json(j.at("adversary"));
  if (j.contains("hint")) c.hint = hint_spec_from_json(j.at("hint"));

  if (c.n < 1 || c.n > kMaxGroundSet) throw InputError("config: n must be in 1..62");
  if (c.k < 1 || c.k > c.n) throw InputError("config: need 1 <= k <= n");
  if (c.T < 1) throw InputError("config: T must be positive");
  if (!(c.alpha >= 1.0)) throw InputError("config: alpha must be at least 1");
  if (c.M && !(*c.M > 0.0)) throw InputError("config: M must be positive");
  if (c.G && !(*c.G > 0.0)) throw InputError("config: G must be positive");
  if (c.replicas < 1) throw InputError("config: replicas must be positive");
  if (c.threads < 0) throw InputError("config: threads must be nonnegative");
  if (c.adversary.kind == AdversaryKind::kMatchingRandom && c.n % 2 != 0) {
    throw InputError("config: matching-random needs an even n");
  }
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j = {{"schema", kConfigSchema}, {"n", c.n},   {"k", c.k},
                      {"T", c.T},                {"alpha", c.alpha},
                      {"seed", c.seed},          {"replicas", c.replicas},
                      {"output", c.output},      {"threads", c.threads},
                      {"policy", policy_to_json(c.policy)},
                      {"adversary", to_json(c.adversary)}};
  if (c.M) j["M"] = *c.M;
  if (c.G) j["G"] = *c.G;
  if (c.hint) j["hint"] = to_json(*c.hint);
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_header() {
  return "round,reward,full_reward,cum_reward,cum_benchmark,aug_regret,static_regret,observed,"
         "cum_cost";
}

std::string csv_line(const CsvRow& r) {
  std::string s = std::to_string(r.round);
  for (double x : {r.reward, r.full_reward, r.cum_reward, r.cum_benchmark, r.aug_regret,
                   r.static_regret}) {
    s += ',';
    s += format_double(x);
  }
  s += r.observed ? ",1," : ",0,";
  s += format_double(r.cum_cost);
  return s;
}

Stat summarize(std::span<const double> xs) {
  Stat s;
  if (xs.empty()) return s;
  s.mean = sum(xs) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    s.stderr_mean = s.stddev / std::sqrt(static_cast<double>(xs.size()));
  }
  return s;
}

ReplicaResult run_replica(const ExperimentConfig& cfg, int replica, bool keep_rows) {
  const int n = cfg.n;
  const int k = cfg.k;
  const uint64_t seed = derive_seed(cfg.seed, static_cast<uint64_t>(replica));
  Adversary adversary(cfg.adversary, n, cfg.T, derive_seed(seed, 1));
  Rng policy_rng(derive_seed(seed, 2));
  Rng hint_rng(derive_seed(seed, 3));
  Rng fvec_rng(derive_seed(seed, 4));
  const CoreStrategy core = make_core_strategy(cfg.policy, fvec_rng);
  const double G = norm_bound_of(cfg);
  const double M = value_bound_of(cfg);

  ScoreConfig sc{n, k, cfg.T, cfg.alpha, M, G, cfg.policy.eta};
  double epsilon = 1.0;
  if (cfg.policy.kind == PolicyKind::kPriced) {
    const PricedParams pp = priced_defaults(n, k, cfg.T, G, std::max(cfg.policy.cost, 1e-300));
    epsilon = cfg.policy.epsilon.value_or(pp.epsilon);
    if (!sc.eta) {
      sc.eta = std::sqrt(epsilon * k * log_ratio(n, k) / (2.0 * cfg.T * G * G));
    }
  }
  std::optional<ScorePolicy> score;
  std::optional<OftrlPolicy> oftrl;
  if (cfg.policy.kind == PolicyKind::kOftrl) {
    OftrlConfig oc;
    oc.n = n;
    oc.k = k;
    oc.T = cfg.T;
    oc.sigma = cfg.policy.sigma.value_or(0.0);
    oc.G = G;
    oc.mode = cfg.policy.mode;
    oc.afw_max_iters = cfg.policy.afw_max_iters;
    oc.shadow_exact = cfg.policy.shadow_exact;
    oftrl.emplace(oc);
  } else {
    score.emplace(sc);
  }
  const HintSpec hint = cfg.hint.value_or(HintSpec{});

  std::ofstream csv;
  if (!cfg.output.empty()) {
    std::filesystem::create_directories(cfg.output);
    const auto path = std::filesystem::path(cfg.output) / ("replica_" + std::to_string(replica) + ".csv");
    csv.open(path, std::ios::binary);
    if (!csv) throw InputError("cannot write " + path.string());
    csv << csv_header() << '\n';
  }

  ReplicaResult out;
  out.replica = replica;
  out.seed = seed;
  RegretTracker tracker(n, k, cfg.alpha);
  for (long t = 1; t <= cfg.T; ++t) {
    const SetFunctionPtr f = adversary.next();
    RoundRecord r;
    switch (cfg.policy.kind) {
      case PolicyKind::kScore:
        r = score->score_round(*f, core, policy_rng);
        break;
      case PolicyKind::kSemibandit:
        r = score->semibandit_round(*f, core, policy_rng);
        break;
      case PolicyKind::kPriced:
        r = score->priced_round(epsilon, cfg.policy.cost, *f, core, policy_rng);
        break;
      case PolicyKind::kOftrl: {
        const AdmissibleVector fvec = checked_core(core, *f);
        const std::vector<double> h = make_hint(fvec.g, hint, hint_rng);
        r = oftrl->oftrl_round(h, *f, fvec, policy_rng);
        const OftrlDiagnostics& d = oftrl->last();
        out.afw_iterations += d.afw_iterations;
        if (d.afw_capped) ++out.afw_capped_rounds;
        out.max_shadow_distance = std::max(out.max_shadow_distance, d.shadow_distance);
        if (cfg.policy.distance) {
          const double dist = distance_sup(*f, ModularFunction(h));
          out.sum_sq_distance += dist * dist;
        }
        break;
      }
    }
    tracker.add(r);
    if (r.observed) ++out.observed_rounds;
    if (csv.is_open() || keep_rows) {
      CsvRow row{t,
                 r.reward,
                 r.full_reward,
                 tracker.cum_reward(),
                 tracker.benchmark(),
                 tracker.augmented_regret(),
                 tracker.static_regret(),
                 r.observed,
                 tracker.cum_cost()};
      if (csv.is_open()) csv << csv_line(row) << '\n';
      if (keep_rows) out.rows.push_back(row);
    }
  }
  out.aug_regret = tracker.augmented_regret();
  out.static_regret = tracker.static_regret();
  out.cost = tracker.cum_cost();
  out.cum_reward = tracker.cum_reward();
  out.benchmark = tracker.benchmark();
  return out;
}

RunSummary run(const ExperimentConfig& cfg, bool keep_rows) {
  RunSummary s;
  s.config = cfg;
  s.M = value_bound_of(cfg);
  s.G = norm_bound_of(cfg);
  const int n = cfg.n, k = cfg.k;
  if (cfg.policy.kind == PolicyKind::kPriced) {
    const PricedParams pp = priced_defaults(n, k, cfg.T, s.G, std::max(cfg.policy.cost, 1e-300));
    s.epsilon = cfg.policy.epsilon.value_or(pp.epsilon);
    if (pp.clamped && !cfg.policy.epsilon) {
      s.warnings.push_back("priced epsilon formula exceeded 1 and was clamped to 1");
    }
    s.eta = cfg.policy.eta.value_or(std::sqrt(s.epsilon * k * log_ratio(n, k) / (2.0 * cfg.T * s.G * s.G)));
  } else if (cfg.policy.kind != PolicyKind::kOftrl) {
    s.eta = cfg.policy.eta.value_or(default_eta(n, k, cfg.T, s.G));
  }

  s.replicas.resize(cfg.replicas);
  std::vector<std::exception_ptr> errors(cfg.replicas);
  std::atomic<int> next{0};
  const int workers = std::max(
      1, std::min(cfg.replicas, cfg.threads > 0 ? cfg.threads
                                                : static_cast<int>(std::thread::hardware_concurrency())));
  auto work = [&] {
    for (int r = next++; r < cfg.replicas; r = next++) {
      try {
        s.replicas[r] = run_replica(cfg, r, keep_rows);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> aug, stat, cost, total;
  for (const ReplicaResult& r : s.replicas) {
    aug.push_back(r.aug_regret);
    stat.push_back(r.static_regret);
    cost.push_back(r.cost);
    total.push_back(r.static_regret + r.cost);
  }
  s.aug_regret = summarize(aug);
  s.static_regret = summarize(stat);
  s.cost = summarize(cost);
  s.total = summarize(total);

  auto add_bound = [&](const std::string& name, const std::string& metric,
                       const std::vector<double>& values, const std::vector<double>& bounds) {
    BoundCheck b{name, metric};
    double ratio_sum = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
      const double ratio = bound_ratio(values[i], bounds[i]);
      b.max_ratio = i == 0 ? ratio : std::max(b.max_ratio, ratio);
      ratio_sum += ratio;
      b.mean_bound += bounds[i];
    }
    b.mean_bound /= values.size();
    b.mean_ratio = ratio_sum / values.size();
    s.bounds.push_back(b);
  };
  const size_t R = s.replicas.size();
  const double static_bound = static_regret_bound(n, k, cfg.T, s.G);
  switch (cfg.policy.kind) {
    case PolicyKind::kScore:
      add_bound("static", "static_regret", stat, std::vector<double>(R, static_bound));
      add_bound("augmented", "aug_regret", aug, std::vector<double>(R, static_bound / cfg.alpha));
      break;
    case PolicyKind::kSemibandit:
      add_bound("static", "static_regret", stat, std::vector<double>(R, static_bound));
      break;
    case PolicyKind::kPriced:
      add_bound("priced", "static_regret+cost", total,
                std::vector<double>(R, priced_regret_bound(n, k, cfg.T, s.G, cfg.policy.cost)));
      break;
    case PolicyKind::kOftrl:
      if (cfg.policy.distance) {
        std::vector<double> b;
        for (const ReplicaResult& r : s.replicas) b.push_back(optimistic_regret_bound(k, r.sum_sq_distance));
        add_bound("optimistic", "aug_regret", aug, b);
      }
      break;
  }

  if (!cfg.output.empty()) {
    std::filesystem::create_directories(cfg.output);
    std::ofstream js(std::filesystem::path(cfg.output) / "summary.json", std::ios::binary);
    js << s.to_json().dump(2) << '\n';
  }
  return s;
}

nlohmann::json RunSummary::to_json() const {
  auto stat_json = [](const Stat& st) {
    return nlohmann::json{{"mean", st.mean}, {"stddev", st.stddev}, {"stderr", st.stderr_mean}};
  };
  nlohmann::json j;
  j["config"] = score::to_json(config);
  j["M"] = M;
  j["G"] = G;
  j["eta"] = eta;
  j["epsilon"] = epsilon;
  j["warnings"] = warnings;
  j["final"] = {{"aug_regret", stat_json(aug_regret)},
                {"static_regret", stat_json(static_regret)},
                {"cost", stat_json(cost)},
                {"static_regret_plus_cost", stat_json(total)}};
  nlohmann::json bs = nlohmann::json::array();
  for (const BoundCheck& b : bounds) {
    bs.push_back({{"name", b.name}, {"metric", b.metric}, {"mean_bound", b.mean_bound},
                  {"mean_ratio", b.mean_ratio}, {"max_ratio", b.max_ratio}});
  }
  j["bounds"] = bs;
  nlohmann::json reps = nlohmann::json::array();
  for (const ReplicaResult& r : replicas) {
    nlohmann::json e = {{"replica", r.replica},         {"seed", r.seed},
                        {"aug_regret", r.aug_regret},   {"static_regret", r.static_regret},
                        {"cost", r.cost},               {"observed_rounds", r.observed_rounds}};
    if (config.policy.kind == PolicyKind::kOftrl) {
      e["sum_sq_distance"] = r.sum_sq_distance;
      e["afw_iterations"] = r.afw_iterations;
      e["afw_capped_rounds"] = r.afw_capped_rounds;
      e["max_shadow_distance"] = r.max_shadow_distance;
    }
    reps.push_back(e);
  }
  j["replicas"] = reps;
  return j;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("loglog_slope: need two or more points");
  double mx = 0.0, my = 0.0;
  const double m = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InputError("loglog_slope: values must be positive");
    mx += std::log(x[i]) / m;
    my += std::log(y[i]) / m;
  }
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InputError("loglog_slope: x values must differ");
  return sxy / sxx;
}

SweepResult sweep(const ExperimentConfig& base, const std::string& axis,
                  const std::vector<double>& values) {
  if (values.empty()) throw InputError("sweep: no values");
  SweepResult out;
  out.axis = axis;
  out.values = values;
  for (double v : values) {
    ExperimentConfig c = base;
    if (!base.output.empty()) {
      c.output = (std::filesystem::path(base.output) / (axis + "_" + format_double(v))).string();
    }
    if (axis == "T") {
      if (!(v >= 1.0) || v != std::floor(v)) throw InputError("sweep: T values must be positive integers");
      c.T = static_cast<long>(v);
    } else if (axis == "k") {
      if (v != std::floor(v) || v < 1 || v > c.n) throw InputError("sweep: k values must be in 1..n");
      c.k = static_cast<int>(v);
    } else if (axis == "noise_l2") {
      if (!(v >= 0.0)) throw InputError("sweep: noise_l2 must be nonnegative");
      HintSpec h = c.hint.value_or(HintSpec{HintMode::kAdditiveNoise, 0.0});
      h.mode = HintMode::kAdditiveNoise;
      h.noise_l2 = v;
      c.hint = h;
    } else if (axis == "epsilon") {
      if (!(v > 0.0 && v <= 1.0)) throw InputError("sweep: epsilon must lie in (0,1]");
      c.policy.epsilon = v;
    } else if (axis == "cost") {
      if (!(v >= 0.0)) throw InputError("sweep: cost must be nonnegative");
      c.policy.cost = v;
    } else {
      throw InputError("sweep: unknown axis '" + axis + "'");
    }
    out.runs.push_back(run(c));
  }
  if (values.size() >= 2) {
    auto slope_of = [&](auto metric) {
      std::vector<double> ys;
      for (const RunSummary& r : out.runs) ys.push_back(metric(r));
      for (size_t i = 0; i < ys.size(); ++i) {
        if (!(ys[i] > 0.0) || !(values[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      }
      return loglog_slope(values, ys);
    };
    out.slope_aug = slope_of([](const RunSummary& r) { return r.aug_regret.mean; });
    out.slope_static = slope_of([](const RunSummary& r) { return r.static_regret.mean; });
    out.slope_total = slope_of([](const RunSummary& r) { return r.total.mean; });
  }
  if (!base.output.empty()) {
    std::filesystem::create_directories(base.output);
    std::ofstream f(std::filesystem::path(base.output) / ("sweep_" + axis + ".csv"), std::ios::binary);
    f << out.to_csv();
  }
  return out;
}

std::string SweepResult::to_csv() const {
  std::string s = axis +
                  ",mean_aug_regret,std_aug_regret,mean_static_regret,std_static_regret,mean_cost,"
                  "mean_static_regret_plus_cost,std_static_regret_plus_cost\n";
  for (size_t i = 0; i < runs.size(); ++i) {
    const RunSummary& r = runs[i];
    for (double x : {values[i], r.aug_regret.mean, r.aug_regret.stddev, r.static_regret.mean,
                     r.static_regret.stddev, r.cost.mean, r.total.mean}) {
      s += format_double(x);
      s += ',';
    }
    s += format_double(r.total.stddev);
    s += '\n';
  }
  return s;
}

LowerBoundResult lower_bound(int n, int k, long T, int replicas, uint64_t seed) {
  ExperimentConfig c;
  c.n = n;
  c.k = k;
  c.T = T;
  c.seed = seed;
  c.replicas = replicas;
  c.policy.kind = PolicyKind::kScore;
  c.adversary.kind = AdversaryKind::kOnehot;
  const RunSummary s = run(c);
  LowerBoundResult out;
  for (const ReplicaResult& r : s.replicas) out.regrets.push_back(r.aug_regret);
  out.stat = summarize(out.regrets);
  out.z = out.stat.stderr_mean > 0.0 ? out.stat.mean / out.stat.stderr_mean : 0.0;
  return out;
}

}  // namespace score
