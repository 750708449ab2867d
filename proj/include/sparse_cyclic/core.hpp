#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sparse_cyclic {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Every failure raised by the library derives from Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct DivergenceError : Error {
  long step;
  DivergenceError(const std::string& msg, long step_index)
      : Error(msg + " (step " + std::to_string(step_index) + ")"), step(step_index) {}
};

struct InsufficientDataError : Error {
  using Error::Error;
};

struct ScalingError : Error {
  using Error::Error;
};

struct CapacityError : Error {
  using Error::Error;
};

struct DegenerateColumnError : Error {
  using Error::Error;
};

struct RankDeficientError : Error {
  std::vector<int> dependent;
  RankDeficientError(const std::string& msg, std::vector<int> cols)
      : Error(msg), dependent(std::move(cols)) {}
};

struct UndefinedMetricError : Error {
  using Error::Error;
};

struct HypothesisError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct StageError : Error {
  std::string stage;
  StageError(std::string stage_name, const std::string& msg)
      : Error("[" + stage_name + "] " + msg), stage(std::move(stage_name)) {}
};

// Seedable generator with fixed, platform-independent output.
// std::mt19937_64 is fully specified by the standard; the distributions
// below are hand-rolled because the std:: ones are implementation-defined.
class Rng {
 public:
  static constexpr const char* algorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the second variate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    spare_ = rad * std::sin(ang);
    has_spare_ = true;
    return rad * std::cos(ang);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<long>(std::llround(r));
}

}  // namespace sparse_cyclic
