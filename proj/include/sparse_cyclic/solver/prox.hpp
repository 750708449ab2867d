#pragma once

#include <utility>

#include "../core.hpp"

namespace sparse_cyclic {

inline Vec soft_threshold(const Vec& c, double gamma) {
  if (gamma < 0) throw ArgumentError("threshold must be nonnegative");
  return c.unaryExpr([gamma](double x) {
    if (x > gamma) return x - gamma;
    if (x < -gamma) return x + gamma;
    return 0.0;
  });
}

// Projection onto the closed ball of radius sigma centred at V.
inline Vec project_ball(const Vec& w, const Vec& V, double sigma) {
  if (sigma < 0) throw ArgumentError("sigma must be nonnegative");
  const Vec d = w - V;
  const double nd = d.norm();
  if (nd <= sigma) return w;
  return V + (sigma / nd) * d;
}

inline std::pair<Vec, Vec> prox_f1(const Vec& w, const Vec& c, double gamma, const Vec& V, double sigma) {
  return {project_ball(w, V, sigma), soft_threshold(c, gamma)};
}

// Projection onto {(w, c) : w = A c}:
//   z = (I + A^T A)^{-1} (c + A^T w),  (w', c') = (A z, z).
// For wide A the m x m system I + A A^T is factored instead; with
// t = c + A^T w and y = (I + A A^T)^{-1} A t this gives z = t - A^T y and
// A z = y.
class ProxF2 {
 public:
  enum class Form { column_space, row_space };

  explicit ProxF2(const Mat& A) : A_(A) {
    if (!A.allFinite()) throw Error("dictionary has non-finite entries");
    form_ = A.rows() < A.cols() ? Form::row_space : Form::column_space;
    factor();
  }

  ProxF2(const Mat& A, Form form) : A_(A), form_(form) {
    if (!A.allFinite()) throw Error("dictionary has non-finite entries");
    factor();
  }

  Form form() const { return form_; }

  std::pair<Vec, Vec> operator()(const Vec& w, const Vec& c) const {
    const Vec t = c + A_.transpose() * w;
    if (form_ == Form::row_space) {
      Vec y = llt_.solve(A_ * t);
      Vec z = t - A_.transpose() * y;
      return {std::move(y), std::move(z)};
    }
    Vec z = llt_.solve(t);
    Vec Az = A_ * z;
    return {std::move(Az), std::move(z)};
  }

 private:
  void factor() {
    if (form_ == Form::row_space) {
      Mat G = Mat::Identity(A_.rows(), A_.rows());
      G.selfadjointView<Eigen::Lower>().rankUpdate(A_);
      llt_.compute(G);
    } else {
      Mat G = Mat::Identity(A_.cols(), A_.cols());
      G.selfadjointView<Eigen::Lower>().rankUpdate(A_.transpose());
      llt_.compute(G);
    }
    if (llt_.info() != Eigen::Success) throw Error("Cholesky factorization failed");
  }

  Mat A_;
  Form form_;
  Eigen::LLT<Mat> llt_;
};

}  // namespace sparse_cyclic
