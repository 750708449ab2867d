#pragma once

#include <vector>

#include "cyclic_data.hpp"

namespace sparse_cyclic {

// u -> a*u + b.
struct ScalingTransform {
  double a = 1.0;
  double b = 0.0;

  double operator()(double u) const { return a * u + b; }
};

// Maps [min, max] of the data onto [-1, 1].
inline ScalingTransform fit_scaling(const Mat& data) {
  if (data.size() == 0) throw ScalingError("cannot fit a scaling to empty data");
  const double lo = data.minCoeff(), hi = data.maxCoeff();
  if (!(hi > lo)) throw ScalingError("data is constant; scaling is undefined");
  return {2.0 / (hi - lo), -(hi + lo) / (hi - lo)};
}

inline ScalingTransform fit_scaling(const CyclicDataMatrix& data) { return fit_scaling(data.rows); }

// One transform per local variable, all equal.
inline std::vector<ScalingTransform> global_scaling(const CyclicDataMatrix& data) {
  return std::vector<ScalingTransform>(data.vars.size(), fit_scaling(data));
}

// One transform per component, shared by that component's variables.
inline std::vector<ScalingTransform> component_scaling(const CyclicDataMatrix& data) {
  std::vector<ScalingTransform> out(data.vars.size());
  for (int c = 0; c < data.layout.components; ++c) {
    std::vector<long> cols;
    for (std::size_t j = 0; j < data.vars.size(); ++j)
      if (data.vars[j].component == c) cols.push_back(static_cast<long>(j));
    if (cols.empty()) continue;
    Mat sub(data.rows.rows(), static_cast<long>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<long>(k)) = data.rows.col(cols[k]);
    const ScalingTransform t = fit_scaling(sub);
    for (long j : cols) out[j] = t;
  }
  return out;
}

inline Mat apply_scaling(const Mat& rows, const std::vector<ScalingTransform>& s) {
  if (static_cast<long>(s.size()) != rows.cols()) throw DimensionError("scaling does not match the column count");
  Mat out(rows.rows(), rows.cols());
  for (long j = 0; j < rows.cols(); ++j) out.col(j) = (s[j].a * rows.col(j).array() + s[j].b).matrix();
  return out;
}

}  // namespace sparse_cyclic
