#pragma once

#include "states.hpp"

namespace sparse_cyclic {

// du_j/dt = -u_{j-2} u_{j-1} + u_{j-1} u_{j+1} - u_j + F, periodic.
inline State1D lorenz96_rhs(const State1D& u, double F) {
  const int n = static_cast<int>(u.size());
  if (n < 4) throw DimensionError("Lorenz 96 needs n >= 4, got " + std::to_string(n));
  State1D out(n);
  for (int j = 0; j < n; ++j) {
    const double um2 = u[(j - 2 + n) % n];
    const double um1 = u[(j - 1 + n) % n];
    const double up1 = u[(j + 1) % n];
    out[j] = -um2 * um1 + um1 * up1 - u[j] + F;
  }
  return out;
}

// Semi-discrete viscous Burgers: alpha * 5-point Laplacian plus centred
// differences of u^2 in both directions.
inline State2D burgers2d_rhs(const State2D& u, double alpha) {
  require_square(u);
  if (!(alpha > 0)) throw ArgumentError("alpha must be positive");
  const int n = u.n();
  const double h = u.h;
  const double dif = alpha / (h * h);
  const double adv = 1.0 / (4.0 * h);
  const WrapTable w(n);
  const Mat& x = u.values;
  Mat out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double c = x(i, j);
      const double e = x(w.p1[i], j), wv = x(w.m1[i], j);
      const double nn = x(i, w.p1[j]), s = x(i, w.m1[j]);
      out(i, j) = dif * (e + wv + nn + s - 4.0 * c) + adv * (e * e - wv * wv) + adv * (nn * nn - s * s);
    }
  }
  return State2D(out, h);
}

// Nine-point Laplacian with the four distinct diagonal neighbours.
inline Mat laplacian9(const Mat& x, double h) {
  const int n = static_cast<int>(x.rows());
  const WrapTable w(n);
  const double a = 2.0 / (3.0 * h * h);
  const double b = 1.0 / (6.0 * h * h);
  Mat out(n, n);
  for (int j = 0; j < n; ++j) {
    const int jp = w.p1[j], jm = w.m1[j];
    for (int i = 0; i < n; ++i) {
      const int ip = w.p1[i], im = w.m1[i];
      const double edge = x(ip, j) + x(im, j) + x(i, jp) + x(i, jm);
      const double corner = x(ip, jp) + x(ip, jm) + x(im, jp) + x(im, jm);
      out(i, j) = a * (edge - 5.0 * x(i, j)) + b * corner;
    }
  }
  return out;
}

inline State2D laplacian9(const State2D& s) {
  require_square(s);
  return State2D(laplacian9(s.values, s.h), s.h);
}

struct GrayScottParams {
  double r_u = 0.3;
  double r_v = 0.15;
  double f = 0.055;
  double k = 0.063;

  bool operator==(const GrayScottParams&) const = default;
};

inline TwoComponentState grayscott_rhs(const TwoComponentState& s, const GrayScottParams& p) {
  require_matching(s);
  if (!(p.r_u > 0 && p.r_v > 0)) throw ArgumentError("diffusion rates must be positive");
  if (p.f < 0 || p.k < 0) throw ArgumentError("f and k must be nonnegative");
  const Mat lu = laplacian9(s.u.values, s.u.h);
  const Mat lv = laplacian9(s.v.values, s.v.h);
  const auto u = s.u.values.array();
  const auto v = s.v.values.array();
  const Eigen::ArrayXXd uvv = u * v * v;
  Mat du = (p.r_u * lu.array() - uvv + p.f * (1.0 - u)).matrix();
  Mat dv = (p.r_v * lv.array() + uvv - (p.f + p.k) * v).matrix();
  return {State2D(std::move(du), s.u.h), State2D(std::move(dv), s.v.h)};
}

}  // namespace sparse_cyclic
