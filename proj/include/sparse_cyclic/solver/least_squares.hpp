#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "../core.hpp"

namespace sparse_cyclic {

// Least squares on the columns in S; zeros elsewhere. Columns are scaled to
// unit norm before the solve so that mixed-degree monomials stay well posed.
inline Vec debias(const Mat& A, const Vec& V, const std::vector<int>& S) {
  if (A.rows() != V.size()) throw DimensionError("dictionary and velocity row counts differ");
  Vec c = Vec::Zero(A.cols());
  if (S.empty()) return c;
  Mat sub(A.rows(), static_cast<long>(S.size()));
  Vec scale(static_cast<long>(S.size()));
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (S[k] < 0 || S[k] >= A.cols()) throw ArgumentError("support index out of range");
    const double nrm = A.col(S[k]).norm();
    scale[static_cast<long>(k)] = nrm > 0 ? nrm : 1.0;
    sub.col(static_cast<long>(k)) = A.col(S[k]) / scale[static_cast<long>(k)];
  }
  Eigen::ColPivHouseholderQR<Mat> qr(sub);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<long>(S.size())) {
    std::vector<int> dep;
    for (long k = qr.rank(); k < static_cast<long>(S.size()); ++k) dep.push_back(S[qr.colsPermutation().indices()[k]]);
    std::sort(dep.begin(), dep.end());
    std::string msg = "support columns are linearly dependent:";
    for (int d : dep) msg += " " + std::to_string(d);
    throw RankDeficientError(msg, dep);
  }
  const Vec x = qr.solve(V);
  for (std::size_t k = 0; k < S.size(); ++k) c[S[k]] = x[static_cast<long>(k)] / scale[static_cast<long>(k)];
  return c;
}

enum class LeastSquaresConvention { minimum_norm, basic };

// Unregularized fit over all columns. minimum_norm returns the minimizer of
// smallest l2 norm; basic returns the column-pivoted QR solution with at most
// rank(A) nonzeros.
inline Vec least_squares_baseline(const Mat& A, const Vec& V,
                                  LeastSquaresConvention conv = LeastSquaresConvention::minimum_norm) {
  if (A.size() == 0) throw ArgumentError("empty dictionary");
  if (A.rows() != V.size()) throw DimensionError("dictionary and velocity row counts differ");
  if (conv == LeastSquaresConvention::basic) return A.colPivHouseholderQr().solve(V);
  return A.completeOrthogonalDecomposition().solve(V);
}

inline std::string to_string(LeastSquaresConvention c) {
  return c == LeastSquaresConvention::basic ? "basic" : "minimum_norm";
}

}  // namespace sparse_cyclic
