#pragma once

#include <algorithm>
#include <vector>

#include "../core.hpp"

namespace sparse_cyclic {

using State1D = Vec;

// Square periodic grid; values(i, j) with i the row index.
struct State2D {
  Mat values;
  double h = 1.0;

  State2D() = default;
  State2D(Mat v, double spacing) : values(std::move(v)), h(spacing) {}

  int n() const { return static_cast<int>(values.rows()); }
};

struct TwoComponentState {
  State2D u;
  State2D v;
};

inline void require_square(const State2D& s) {
  if (s.values.rows() != s.values.cols())
    throw DimensionError("grid must be square, got " + std::to_string(s.values.rows()) + "x" +
                         std::to_string(s.values.cols()));
  if (!(s.h > 0)) throw DimensionError("grid spacing must be positive");
}

inline void require_matching(const TwoComponentState& s) {
  require_square(s.u);
  require_square(s.v);
  if (s.u.n() != s.v.n() || s.u.h != s.v.h)
    throw DimensionError("u and v grids differ in size or spacing");
}

// Elementwise helpers used by the integrator, noise and velocity code.

inline void axpy(State1D& x, double a, const State1D& y) { x += a * y; }
inline void axpy(State2D& x, double a, const State2D& y) { x.values += a * y.values; }
inline void axpy(TwoComponentState& x, double a, const TwoComponentState& y) {
  axpy(x.u, a, y.u);
  axpy(x.v, a, y.v);
}

inline bool all_finite(const State1D& x) { return x.allFinite(); }
inline bool all_finite(const State2D& x) { return x.values.allFinite(); }
inline bool all_finite(const TwoComponentState& x) { return all_finite(x.u) && all_finite(x.v); }

template <class F>
void for_each_value(State1D& x, F&& f) {
  for (Eigen::Index i = 0; i < x.size(); ++i) f(x[i]);
}

// Row-major traversal so that draws line up with the vectorization order.
template <class F>
void for_each_value(State2D& x, F&& f) {
  for (Eigen::Index i = 0; i < x.values.rows(); ++i)
    for (Eigen::Index j = 0; j < x.values.cols(); ++j) f(x.values(i, j));
}

template <class F>
void for_each_value(TwoComponentState& x, F&& f) {
  for_each_value(x.u, f);
  for_each_value(x.v, f);
}

inline State1D difference(const State1D& a, const State1D& b, double scale) {
  return (a - b) * scale;
}
inline State2D difference(const State2D& a, const State2D& b, double scale) {
  return State2D((a.values - b.values) * scale, a.h);
}
inline TwoComponentState difference(const TwoComponentState& a, const TwoComponentState& b,
                                    double scale) {
  return {difference(a.u, b.u, scale), difference(a.v, b.v, scale)};
}

// Cyclic shifts: result[i] = x[(i + s) mod n].
inline State1D shift(const State1D& x, int s) {
  const int n = static_cast<int>(x.size());
  State1D out(n);
  for (int i = 0; i < n; ++i) out[i] = x[((i + s) % n + n) % n];
  return out;
}

inline State2D shift(const State2D& x, int si, int sj) {
  const int n = x.n();
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = x.values(((i + si) % n + n) % n, ((j + sj) % n + n) % n);
  return State2D(out, x.h);
}

inline TwoComponentState shift(const TwoComponentState& x, int si, int sj) {
  return {shift(x.u, si, sj), shift(x.v, si, sj)};
}

// Wrapped neighbour tables: plus[i] = (i+1) mod n etc.
struct WrapTable {
  std::vector<int> p1, m1;
  explicit WrapTable(int n) : p1(n), m1(n) {
    for (int i = 0; i < n; ++i) {
      p1[i] = (i + 1) % n;
      m1[i] = (i - 1 + n) % n;
    }
  }
};

}  // namespace sparse_cyclic
