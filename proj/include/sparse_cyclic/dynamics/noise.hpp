#pragma once

#include <cmath>
#include <string>

#include "integrate.hpp"

namespace sparse_cyclic {

enum class NoiseKind { none, gaussian, uniform };

// independent: a fresh draw for every entry of every snapshot.
// shared: one draw per entry, reused for all snapshots of the burst, so the
// perturbation cancels in the finite-difference velocity.
enum class NoiseMode { independent, shared };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double level = 0.0;  // variance for gaussian, half-width for uniform
  std::uint64_t seed = 0;
  NoiseMode mode = NoiseMode::independent;

  bool operator==(const NoiseSpec&) const = default;
};

inline std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::uniform: return "uniform";
    default: return "none";
  }
}

inline NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "none") return NoiseKind::none;
  if (s == "gaussian") return NoiseKind::gaussian;
  if (s == "uniform") return NoiseKind::uniform;
  throw ConfigError("unknown noise kind '" + s + "'");
}

inline std::string to_string(NoiseMode m) {
  return m == NoiseMode::shared ? "shared" : "independent";
}

inline NoiseMode noise_mode_from_string(const std::string& s) {
  if (s == "independent") return NoiseMode::independent;
  if (s == "shared") return NoiseMode::shared;
  throw ConfigError("unknown noise mode '" + s + "'");
}

inline void validate(const NoiseSpec& spec) {
  if (spec.level < 0) throw ArgumentError("noise level must be nonnegative");
  if (spec.kind == NoiseKind::none && spec.level != 0)
    throw ArgumentError("noise kind 'none' requires level 0");
}

// The stream argument separates bursts drawn with the same seed.
template <class S>
Burst<S> add_noise(Burst<S> burst, const NoiseSpec& spec, std::uint64_t stream = 0) {
  validate(spec);
  if (spec.kind == NoiseKind::none || spec.level == 0) return burst;
  Rng rng(spec.seed, stream);
  const double sd = std::sqrt(spec.level);
  auto draw = [&]() {
    return spec.kind == NoiseKind::gaussian ? sd * rng.normal()
                                            : rng.uniform(-spec.level, spec.level);
  };
  if (spec.mode == NoiseMode::independent) {
    for (auto& snap : burst.snapshots) for_each_value(snap, [&](double& x) { x += draw(); });
    return burst;
  }
  std::vector<double> eta;
  for_each_value(burst.snapshots.front(), [&](double&) { eta.push_back(draw()); });
  for (auto& snap : burst.snapshots) {
    std::size_t i = 0;
    for_each_value(snap, [&](double& x) { x += eta[i++]; });
  }
  return burst;
}

}  // namespace sparse_cyclic
