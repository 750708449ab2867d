#pragma once

#include <cmath>

#include "states.hpp"

namespace sparse_cyclic {

// i.i.d. uniform on [-1,1]^n.
inline State1D uniform_state(int n, Rng& rng) {
  State1D u(n);
  for (int i = 0; i < n; ++i) u[i] = rng.uniform(-1.0, 1.0);
  return u;
}

inline Mat uniform_grid(int n, Rng& rng) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

// Grid node positions are x_i = i/n, y_j = j/n on the unit square.

// 50 sin(8 pi (x - 1/2)) exp(-((x-1/2)^2 + (y-1/2)^2)/0.05) + nu.
inline State2D burgers_initial(int n, double h, Rng& rng, double amplitude = 50.0) {
  Mat m = uniform_grid(n, rng);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n - 0.5;
    for (int j = 0; j < n; ++j) {
      const double y = static_cast<double>(j) / n - 0.5;
      m(i, j) += amplitude * std::sin(8.0 * M_PI * x) * std::exp(-(x * x + y * y) / 0.05);
    }
  }
  return State2D(m, h);
}

// Two vertical bars joined by a crossbar.
inline bool in_h_region(double x, double y) {
  const bool bars = (std::abs(x - 0.35) <= 0.05 || std::abs(x - 0.65) <= 0.05) &&
                    std::abs(y - 0.5) <= 0.25;
  const bool cross = std::abs(x - 0.5) <= 0.15 && std::abs(y - 0.5) <= 0.05;
  return bars || cross;
}

// u = 1 + 0.2 nu1, v = 1_H + 0.02 nu2 with independent nu1, nu2.
inline TwoComponentState grayscott_initial(int n, double h, Rng& rng) {
  Mat u = uniform_grid(n, rng);
  Mat v = uniform_grid(n, rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      u(i, j) = 1.0 + 0.2 * u(i, j);
      const double ind = in_h_region(static_cast<double>(i) / n, static_cast<double>(j) / n) ? 1.0 : 0.0;
      v(i, j) = ind + 0.02 * v(i, j);
    }
  return {State2D(u, h), State2D(v, h)};
}

}  // namespace sparse_cyclic
