#pragma once

#include <vector>

#include "integrate.hpp"

namespace sparse_cyclic {

// Forward differences between consecutive recorded snapshots.
template <class S>
std::vector<S> approximate_velocity(const Burst<S>& burst) {
  if (burst.snapshots.size() < 2 || burst.times.size() != burst.snapshots.size())
    throw InsufficientDataError("velocity needs at least two recorded snapshots");
  std::vector<S> out;
  for (std::size_t i = 0; i + 1 < burst.snapshots.size(); ++i) {
    const double dt = burst.times[i + 1] - burst.times[i];
    out.push_back(difference(burst.snapshots[i + 1], burst.snapshots[i], 1.0 / dt));
  }
  return out;
}

}  // namespace sparse_cyclic
