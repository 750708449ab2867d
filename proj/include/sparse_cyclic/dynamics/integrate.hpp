#pragma once

#include <cmath>
#include <vector>

#include "states.hpp"

namespace sparse_cyclic {

template <class S>
struct Burst {
  std::vector<S> snapshots;
  std::vector<double> times;
  int id = 0;

  double dt_record() const {
    if (times.size() < 2) throw InsufficientDataError("burst has fewer than two snapshots");
    return times[1] - times[0];
  }
};

// Forward Euler from t = 0, recording the state at each requested time.
// Record times must be nonnegative, increasing multiples of dt_fine.
template <class S, class Rhs>
Burst<S> integrate(Rhs&& rhs, S state, double dt_fine, const std::vector<double>& record_times,
                   int id = 0) {
  if (!(dt_fine > 0)) throw ArgumentError("dt_fine must be positive");
  if (record_times.empty()) throw ArgumentError("no record times");
  std::vector<long> stamps;
  stamps.reserve(record_times.size());
  for (double t : record_times) {
    if (t < 0) throw ArgumentError("record times must be nonnegative");
    const double q = t / dt_fine;
    const long k = std::lround(q);
    if (std::abs(q - static_cast<double>(k)) > 1e-6 * std::max(1.0, q))
      throw ArgumentError("record time " + std::to_string(t) + " is not a multiple of dt_fine");
    if (!stamps.empty() && k <= stamps.back())
      throw ArgumentError("record times must be strictly increasing");
    stamps.push_back(k);
  }
  if (!all_finite(state)) throw DivergenceError("non-finite initial state", 0);

  Burst<S> out;
  out.id = id;
  out.times = record_times;
  long step = 0;
  for (long target : stamps) {
    while (step < target) {
      const S d = rhs(state);
      axpy(state, dt_fine, d);
      ++step;
      if (!all_finite(state)) throw DivergenceError("state became non-finite", step);
    }
    out.snapshots.push_back(state);
  }
  return out;
}

// Advance `steps` Euler steps; finiteness is checked every `check_every` steps.
template <class S, class Rhs>
S evolve(Rhs&& rhs, S state, double dt, long steps, long check_every = 100) {
  for (long s = 1; s <= steps; ++s) {
    const S d = rhs(state);
    axpy(state, dt, d);
    if ((s % check_every == 0 || s == steps) && !all_finite(state))
      throw DivergenceError("state became non-finite", s);
  }
  return state;
}

}  // namespace sparse_cyclic
