#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../dynamics/noise.hpp"
#include "../dynamics/systems.hpp"
#include "../solver/douglas_rachford.hpp"
#include "../solver/least_squares.hpp"
#include "../solver/support.hpp"

namespace sparse_cyclic {

enum class SystemKind { lorenz96, burgers2d, grayscott };
enum class ScalingPolicy { global, per_component };
// finite_difference: forward difference of the first two records.
// exact: the true right-hand side at the first record (consistency checks).
enum class VelocitySource { finite_difference, exact };

struct ExperimentConfig {
  std::string name;
  SystemKind system = SystemKind::burgers2d;

  int n = 128;
  double F = 8.0;
  double alpha = 1e-2;
  GrayScottParams gs;
  double h = 0.0;  // <= 0 means 1/n

  int bursts = 1;
  double dt_fine = 5e-8;
  std::vector<double> record_times{0.0, 1e-5};
  NoiseSpec noise;
  VelocitySource velocity = VelocitySource::finite_difference;

  int block_size = 7;
  std::vector<int> block_start;  // empty: centred in the domain
  int radius = 2;
  int degree = 2;
  ScalingPolicy scaling = ScalingPolicy::global;

  std::vector<double> sigma;  // one per equation, or a single shared value
  SolverConfig solver;
  SupportConfig support;
  bool known_sparsity = true;  // select exactly |S_true| terms
  bool debias = true;
  LeastSquaresConvention least_squares = LeastSquaresConvention::minimum_norm;
  double d_assumed = 1.0;

  double eu_horizon = 0.0;  // 0 skips the learned-vs-exact evolution
  double eu_dt = 0.0;

  std::uint64_t seed = 0;
  std::string output;

  bool operator==(const ExperimentConfig&) const = default;

  double spacing() const { return h > 0 ? h : 1.0 / n; }
  int equations() const { return system == SystemKind::grayscott ? 2 : 1; }
  double sigma_for(int eq) const {
    if (sigma.empty()) throw ConfigError("sigma is not set");
    return sigma.size() == 1 ? sigma[0] : sigma.at(static_cast<std::size_t>(eq));
  }
};

inline std::string to_string(SystemKind s) {
  switch (s) {
    case SystemKind::lorenz96: return "lorenz96";
    case SystemKind::burgers2d: return "burgers2d";
    default: return "grayscott";
  }
}

inline SystemKind system_from_string(const std::string& s) {
  if (s == "lorenz96") return SystemKind::lorenz96;
  if (s == "burgers2d") return SystemKind::burgers2d;
  if (s == "grayscott") return SystemKind::grayscott;
  throw ConfigError("unknown system '" + s + "'");
}

// Default noise radii per system and configuration.
inline std::vector<double> default_sigma(const ExperimentConfig& c) {
  switch (c.system) {
    case SystemKind::burgers2d: return {26.3609};
    case SystemKind::grayscott: {
      const double table[3][2] = {{5.5707e-5, 5.2655e-5}, {6.3055e-5, 6.0194e-5}, {6.3321e-5, 6.0579e-5}};
      const double fk[3][2] = {{0.055, 0.063}, {0.026, 0.053}, {0.018, 0.051}};
      for (int e = 0; e < 3; ++e)
        if (std::abs(c.gs.f - fk[e][0]) < 1e-12 && std::abs(c.gs.k - fk[e][1]) < 1e-12) return {table[e][0], table[e][1]};
      return {6e-5, 6e-5};
    }
    default: {
      const double table[3][3] = {{0.3515, 0.3607, 0.3380}, {0.53575, 0.5074, 0.5002}, {0.4075, 0.7143, 0.6888}};
      int ex = 0;
      if (c.bursts == 4) ex = c.block_size >= 45 ? 2 : 1;
      int lv = 0;
      if (std::abs(c.noise.level - 0.001) < 1e-12) lv = 1;
      if (std::abs(c.noise.level - 0.0005) < 1e-12) lv = 2;
      return {table[ex][lv]};
    }
  }
}

inline ExperimentConfig default_config(SystemKind s) {
  ExperimentConfig c;
  c.system = s;
  switch (s) {
    case SystemKind::lorenz96:
      c.name = "lorenz96";
      c.n = 128;
      c.bursts = 2;
      c.dt_fine = 5e-5;
      c.record_times = {0.0, 1e-2};
      c.noise = {NoiseKind::gaussian, 0.002, 0, NoiseMode::shared};
      c.block_size = 25;
      c.radius = 10;
      c.degree = 3;
      break;
    case SystemKind::burgers2d:
      c.name = "burgers2d";
      c.bursts = 4;
      c.dt_fine = 5e-8;
      c.record_times = {0.0, 1e-5};
      c.block_start = {10, 10};
      c.radius = 2;
      c.degree = 2;
      c.eu_horizon = 1e-3;
      c.eu_dt = 5e-8;
      break;
    case SystemKind::grayscott:
      c.name = "grayscott";
      c.h = 1.0;
      c.bursts = 3;
      c.dt_fine = 1e-6;
      c.record_times = {0.0, 1e-5};
      c.radius = 1;
      c.degree = 3;
      c.scaling = ScalingPolicy::per_component;
      c.solver.gamma = 1e-3;
      c.eu_horizon = 5000.0;
      c.eu_dt = 0.05;
      break;
  }
  c.sigma = default_sigma(c);
  return c;
}

inline void validate(const ExperimentConfig& c) {
  if (c.n < 4) throw ConfigError("n must be at least 4");
  if (c.bursts < 1) throw ConfigError("bursts must be at least 1");
  if (c.degree < 1 || c.degree > 3) throw ConfigError("degree must be 1, 2 or 3");
  if (c.radius < 0 || 2 * c.radius + 1 > c.n) throw ConfigError("radius does not fit the domain");
  if (c.block_size < 1 || c.block_size > c.n) throw ConfigError("block size does not fit the domain");
  if (!c.block_start.empty() && c.block_start.size() != (c.system == SystemKind::lorenz96 ? 1u : 2u))
    throw ConfigError("block_start needs one index per axis");
  if (!(c.dt_fine > 0)) throw ConfigError("dt_fine must be positive");
  if (c.record_times.size() < 2) throw ConfigError("need at least two record times");
  if (c.sigma.empty() || (c.sigma.size() != 1 && static_cast<int>(c.sigma.size()) != c.equations()))
    throw ConfigError("sigma must have one value or one per equation");
  for (double s : c.sigma)
    if (!(s >= 0)) throw ConfigError("sigma must be nonnegative");
  if (c.system == SystemKind::burgers2d && !(c.alpha > 0)) throw ConfigError("alpha must be positive");
  if (c.system == SystemKind::grayscott && !(c.gs.r_u > 0 && c.gs.r_v > 0 && c.gs.f >= 0 && c.gs.k >= 0))
    throw ConfigError("Gray-Scott parameters out of range");
  if (c.eu_horizon > 0 && !(c.eu_dt > 0)) throw ConfigError("eu_dt must be positive when eu_horizon is set");
  validate(c.noise);
  validate(c.solver);
}

// JSON ------------------------------------------------------------------

using nlohmann::json;

inline json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["system"] = to_string(c.system);
  j["n"] = c.n;
  j["F"] = c.F;
  j["alpha"] = c.alpha;
  j["grayscott"] = {{"r_u", c.gs.r_u}, {"r_v", c.gs.r_v}, {"f", c.gs.f}, {"k", c.gs.k}};
  j["h"] = c.h;
  j["bursts"] = c.bursts;
  j["dt_fine"] = c.dt_fine;
  j["record_times"] = c.record_times;
  j["noise"] = {{"kind", to_string(c.noise.kind)},
                {"level", c.noise.level},
                {"seed", c.noise.seed},
                {"mode", to_string(c.noise.mode)}};
  j["velocity"] = c.velocity == VelocitySource::exact ? "exact" : "finite_difference";
  j["block_size"] = c.block_size;
  j["block_start"] = c.block_start;
  j["radius"] = c.radius;
  j["degree"] = c.degree;
  j["scaling"] = c.scaling == ScalingPolicy::global ? "global" : "per_component";
  j["sigma"] = c.sigma;
  j["solver"] = {{"gamma", c.solver.gamma},
                 {"gamma_scale", c.solver.gamma_scale},
                 {"mu", c.solver.mu},
                 {"max_iters", c.solver.max_iters},
                 {"tol", c.solver.tol},
                 {"feasibility_tol", c.solver.feasibility_tol},
                 {"init", c.solver.init == InitialPoint::velocity ? "velocity" : "zero"}};
  j["support"] = {{"noise_floor", c.support.noise_floor},
                  {"rel_threshold", c.support.rel_threshold},
                  {"sparsity", c.support.sparsity},
                  {"max_rounds", c.support.max_rounds}};
  j["known_sparsity"] = c.known_sparsity;
  j["debias"] = c.debias;
  j["least_squares"] = to_string(c.least_squares);
  j["d_assumed"] = c.d_assumed;
  j["eu_horizon"] = c.eu_horizon;
  j["eu_dt"] = c.eu_dt;
  j["seed"] = c.seed;
  j["output"] = c.output;
  return j;
}

namespace detail {

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("unknown field '" + it.key() + "' in " + where);
  }
}

}  // namespace detail

namespace detail {

inline ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                         {"name", "system", "n", "F", "alpha", "grayscott", "h", "bursts", "dt_fine",
                          "record_times", "noise", "velocity", "block_size", "block_start", "radius", "degree",
                          "scaling", "sigma", "solver", "support", "known_sparsity", "debias",
                          "least_squares", "d_assumed", "eu_horizon", "eu_dt", "seed", "output"},
                         "config");
  if (!j.contains("system")) throw ConfigError("config needs a 'system' field");
  ExperimentConfig c = default_config(system_from_string(j.at("system").get<std::string>()));
  take(j, "name", c.name);
  take(j, "n", c.n);
  take(j, "F", c.F);
  take(j, "alpha", c.alpha);
  if (j.contains("grayscott")) {
    const auto& g = j.at("grayscott");
    reject_unknown(g, {"r_u", "r_v", "f", "k"}, "grayscott");
    take(g, "r_u", c.gs.r_u);
    take(g, "r_v", c.gs.r_v);
    take(g, "f", c.gs.f);
    take(g, "k", c.gs.k);
  }
  take(j, "h", c.h);
  take(j, "bursts", c.bursts);
  take(j, "dt_fine", c.dt_fine);
  take(j, "record_times", c.record_times);
  if (j.contains("noise")) {
    const auto& nz = j.at("noise");
    reject_unknown(nz, {"kind", "level", "seed", "mode"}, "noise");
    std::string kind = to_string(c.noise.kind), mode = to_string(c.noise.mode);
    take(nz, "kind", kind);
    take(nz, "mode", mode);
    c.noise.kind = noise_kind_from_string(kind);
    c.noise.mode = noise_mode_from_string(mode);
    take(nz, "level", c.noise.level);
    take(nz, "seed", c.noise.seed);
    if (c.noise.kind == NoiseKind::none && !nz.contains("level")) c.noise.level = 0.0;
  }
  if (j.contains("velocity")) {
    const std::string s = j.at("velocity").get<std::string>();
    if (s == "finite_difference")
      c.velocity = VelocitySource::finite_difference;
    else if (s == "exact")
      c.velocity = VelocitySource::exact;
    else
      throw ConfigError("velocity must be 'finite_difference' or 'exact'");
  }
  take(j, "block_size", c.block_size);
  take(j, "block_start", c.block_start);
  take(j, "radius", c.radius);
  take(j, "degree", c.degree);
  if (j.contains("scaling")) {
    const std::string s = j.at("scaling").get<std::string>();
    if (s == "global")
      c.scaling = ScalingPolicy::global;
    else if (s == "per_component")
      c.scaling = ScalingPolicy::per_component;
    else
      throw ConfigError("unknown scaling policy '" + s + "'");
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    reject_unknown(s, {"gamma", "gamma_scale", "mu", "max_iters", "tol", "feasibility_tol", "init"}, "solver");
    take(s, "gamma", c.solver.gamma);
    take(s, "gamma_scale", c.solver.gamma_scale);
    take(s, "mu", c.solver.mu);
    take(s, "max_iters", c.solver.max_iters);
    take(s, "tol", c.solver.tol);
    take(s, "feasibility_tol", c.solver.feasibility_tol);
    if (s.contains("init")) {
      const std::string init = s.at("init").get<std::string>();
      if (init != "velocity" && init != "zero") throw ConfigError("solver.init must be 'velocity' or 'zero'");
      c.solver.init = init == "velocity" ? InitialPoint::velocity : InitialPoint::zero;
    }
  }
  if (j.contains("support")) {
    const auto& s = j.at("support");
    reject_unknown(s, {"noise_floor", "rel_threshold", "sparsity", "max_rounds"}, "support");
    take(s, "noise_floor", c.support.noise_floor);
    take(s, "rel_threshold", c.support.rel_threshold);
    take(s, "sparsity", c.support.sparsity);
    take(s, "max_rounds", c.support.max_rounds);
  }
  take(j, "known_sparsity", c.known_sparsity);
  take(j, "debias", c.debias);
  if (j.contains("least_squares")) {
    const std::string s = j.at("least_squares").get<std::string>();
    if (s == "minimum_norm")
      c.least_squares = LeastSquaresConvention::minimum_norm;
    else if (s == "basic")
      c.least_squares = LeastSquaresConvention::basic;
    else
      throw ConfigError("least_squares must be 'minimum_norm' or 'basic'");
  }
  take(j, "d_assumed", c.d_assumed);
  take(j, "eu_horizon", c.eu_horizon);
  take(j, "eu_dt", c.eu_dt);
  take(j, "seed", c.seed);
  take(j, "output", c.output);
  if (j.contains("sigma")) {
    const auto& s = j.at("sigma");
    if (s.is_number())
      c.sigma = {s.get<double>()};
    else
      take(j, "sigma", c.sigma);
  } else {
    c.sigma = default_sigma(c);
  }
  validate(c);
  return c;
}

}  // namespace detail

// Missing fields take the system's defaults. A missing sigma is looked up
// from the default table after the other fields are applied.
inline ExperimentConfig config_from_json(const json& j) {
  try {
    return detail::parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
}

inline ExperimentConfig config_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace sparse_cyclic
