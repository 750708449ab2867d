#pragma once

#include <cmath>
#include <vector>

#include "../core.hpp"

namespace sparse_cyclic {

// Normalized Legendre polynomials L_k = sqrt(2k+1) P_k, orthonormal for dx/2
// on [-1,1]: 1, sqrt3 x, (sqrt5/2)(3x^2-1), (sqrt7/2)(5x^3-3x), ...
inline double legendre(int k, double x) {
  if (k == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int j = 1; j < k; ++j) {
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return std::sqrt(2.0 * k + 1.0) * p1;
}

// Power-basis coefficients of L_k: L_k(x) = sum_e c[e] x^e.
inline std::vector<double> legendre_coefficients(int k) {
  std::vector<double> p0{1.0}, p1{0.0, 1.0};
  if (k == 0) return p0;
  for (int j = 1; j < k; ++j) {
    std::vector<double> p2(j + 2, 0.0);
    for (int e = 0; e <= j; ++e) p2[e + 1] += (2.0 * j + 1.0) * p1[e] / (j + 1.0);
    for (int e = 0; e < j; ++e) p2[e] -= j * p0[e] / (j + 1.0);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  for (double& c : p1) c *= std::sqrt(2.0 * k + 1.0);
  return p1;
}

// Coefficients in u of L_k(a*u + b).
inline std::vector<double> legendre_coefficients(int k, double a, double b) {
  const auto c = legendre_coefficients(k);
  std::vector<double> out(k + 1, 0.0);
  std::vector<double> pw{1.0};  // (a u + b)^e
  for (int e = 0; e <= k; ++e) {
    for (std::size_t q = 0; q < pw.size(); ++q) out[q] += c[e] * pw[q];
    std::vector<double> next(pw.size() + 1, 0.0);
    for (std::size_t q = 0; q < pw.size(); ++q) {
      next[q] += b * pw[q];
      next[q + 1] += a * pw[q];
    }
    pw = std::move(next);
  }
  return out;
}

}  // namespace sparse_cyclic
