#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "../solver/support.hpp"

namespace sparse_cyclic {

struct RecoveryMetrics {
  double e_c = 0.0;
  double e_u = 0.0;
  bool support_exact = false;
};

// ||c_exact - c|| / ||c_exact||.
inline double coefficient_error(const Vec& c_exact, const Vec& c_learned) {
  if (c_exact.size() != c_learned.size()) throw DimensionError("coefficient vectors differ in length");
  const double d = c_exact.norm();
  if (!(d > 0)) throw UndefinedMetricError("exact coefficient vector is zero");
  return (c_exact - c_learned).norm() / d;
}

inline double solution_error(const Mat& u_exact, const Mat& u_learned) {
  if (u_exact.rows() != u_learned.rows() || u_exact.cols() != u_learned.cols())
    throw DimensionError("fields differ in shape");
  const double d = u_exact.norm();
  if (!(d > 0)) throw UndefinedMetricError("exact field is zero");
  return (u_exact - u_learned).norm() / d;
}

struct SupportCheck {
  bool matches = false;
  bool prop2_condition = false;
  double threshold = 0.0;  // c_min / (2 d s)
};

// Compares the s largest entries of c_learned with the true support and
// evaluates sigma < c_min / (2 d s) for an assumed constant d.
inline SupportCheck support_check(const Vec& c_learned, std::vector<int> S_true, int s, double sigma,
                                  double c_min, double d_assumed = 1.0) {
  std::sort(S_true.begin(), S_true.end());
  SupportCheck out;
  out.matches = top_s(c_learned, s) == S_true;
  out.threshold = c_min / (2.0 * d_assumed * s);
  out.prop2_condition = sigma < out.threshold;
  return out;
}

inline std::vector<int> nonzero_indices(const Vec& c) {
  std::vector<int> s;
  for (long j = 0; j < c.size(); ++j)
    if (c[j] != 0.0) s.push_back(static_cast<int>(j));
  return s;
}

}  // namespace sparse_cyclic
