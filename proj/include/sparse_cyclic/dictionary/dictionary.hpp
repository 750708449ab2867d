#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cyclic_data.hpp"
#include "legendre.hpp"
#include "multi_index.hpp"
#include "scaling.hpp"

namespace sparse_cyclic {

enum class Basis { monomial, legendre };

struct DictionaryMatrix {
  Mat entries;
  std::vector<MultiIndex> columns;
  Basis basis = Basis::monomial;
  Vec column_norms;                       // empty unless normalized
  std::vector<ScalingTransform> scaling;  // per variable, Legendre only
  std::vector<std::string> var_labels;

  bool normalized() const { return column_norms.size() > 0; }
  long rows() const { return entries.rows(); }
  long cols() const { return entries.cols(); }

  std::vector<std::string> column_labels() const {
    std::vector<std::string> out;
    for (const auto& c : columns) out.push_back(c.label(var_labels));
    return out;
  }
};

namespace detail {

// table[v][e] holds phi_e(x_v) over all rows.
inline Mat evaluate_columns(const std::vector<std::vector<Vec>>& table,
                            const std::vector<MultiIndex>& cols, long rows) {
  Mat A(rows, static_cast<long>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto col = A.col(static_cast<long>(j));
    col.setOnes();
    for (auto [v, e] : cols[j].powers()) col.array() *= table[v][e].array();
  }
  return A;
}

}  // namespace detail

inline DictionaryMatrix monomial_dictionary(const Mat& X, int p,
                                            std::vector<std::string> labels = {},
                                            long cap = kDefaultColumnCap) {
  if (p < 1) throw ArgumentError("degree must be at least 1");
  const int nv = static_cast<int>(X.cols());
  DictionaryMatrix D;
  D.basis = Basis::monomial;
  D.columns = enumerate_multi_indices(nv, p, cap);
  D.var_labels = std::move(labels);
  std::vector<std::vector<Vec>> table(nv, std::vector<Vec>(p + 1));
  for (int v = 0; v < nv; ++v) {
    table[v][0] = Vec::Ones(X.rows());
    for (int e = 1; e <= p; ++e) table[v][e] = table[v][e - 1].cwiseProduct(X.col(v));
  }
  D.entries = detail::evaluate_columns(table, D.columns, X.rows());
  return D;
}

inline DictionaryMatrix monomial_dictionary(const CyclicDataMatrix& data, int p,
                                            long cap = kDefaultColumnCap) {
  return monomial_dictionary(data.rows, p, data.labels(), cap);
}

// Tensorized normalized Legendre columns evaluated on the scaled data.
inline DictionaryMatrix legendre_dictionary(const Mat& X, int p,
                                            const std::vector<ScalingTransform>& scaling,
                                            std::vector<std::string> labels = {},
                                            long cap = kDefaultColumnCap) {
  if (p < 1) throw ArgumentError("degree must be at least 1");
  const int nv = static_cast<int>(X.cols());
  const Mat Y = apply_scaling(X, scaling);
  if (Y.size() > 0 && Y.cwiseAbs().maxCoeff() > 1.0 + 1e-9)
    throw ScalingError("scaled data leaves [-1,1] (max |x| = " + std::to_string(Y.cwiseAbs().maxCoeff()) + ")");
  DictionaryMatrix D;
  D.basis = Basis::legendre;
  D.columns = enumerate_multi_indices(nv, p, cap);
  D.scaling = scaling;
  D.var_labels = std::move(labels);
  std::vector<std::vector<Vec>> table(nv, std::vector<Vec>(p + 1));
  for (int v = 0; v < nv; ++v)
    for (int e = 0; e <= p; ++e) table[v][e] = Y.col(v).unaryExpr([e](double x) { return legendre(e, x); });
  D.entries = detail::evaluate_columns(table, D.columns, X.rows());
  return D;
}

inline DictionaryMatrix legendre_dictionary(const CyclicDataMatrix& data, int p,
                                            const std::vector<ScalingTransform>& scaling,
                                            long cap = kDefaultColumnCap) {
  return legendre_dictionary(data.rows, p, scaling, data.labels(), cap);
}

inline DictionaryMatrix legendre_dictionary(const CyclicDataMatrix& data, int p,
                                            const ScalingTransform& scaling,
                                            long cap = kDefaultColumnCap) {
  return legendre_dictionary(data, p, std::vector<ScalingTransform>(data.vars.size(), scaling), cap);
}

inline DictionaryMatrix normalize_columns(DictionaryMatrix A) {
  Vec norms = A.entries.colwise().norm().transpose();
  for (long j = 0; j < norms.size(); ++j)
    if (!(norms[j] > 0))
      throw DegenerateColumnError("column " + A.columns[j].label(A.var_labels) + " is zero");
  A.entries = A.entries * norms.cwiseInverse().asDiagonal();
  A.column_norms = A.normalized() ? Vec(A.column_norms.cwiseProduct(norms)) : norms;
  return A;
}

// Row-wise concatenation of (dictionary, velocity) pairs.
inline std::pair<DictionaryMatrix, Vec> stack_bursts(
    const std::vector<std::pair<DictionaryMatrix, Vec>>& parts) {
  if (parts.empty()) throw ArgumentError("nothing to stack");
  const auto& first = parts.front().first;
  long rows = 0;
  for (const auto& [D, V] : parts) {
    if (D.columns != first.columns || D.basis != first.basis)
      throw DimensionError("column index mismatch while stacking bursts");
    if (D.rows() != V.size()) throw DimensionError("dictionary and velocity row counts differ");
    rows += D.rows();
  }
  DictionaryMatrix out = first;
  out.entries.resize(rows, first.cols());
  Vec V(rows);
  long at = 0;
  for (const auto& [D, v] : parts) {
    out.entries.middleRows(at, D.rows()) = D.entries;
    V.segment(at, v.size()) = v;
    at += D.rows();
  }
  return {std::move(out), std::move(V)};
}

// Expresses a coefficient vector over the (possibly normalized) Legendre
// columns of A as monomial coefficients in the original, unscaled variables.
inline Vec legendre_to_monomial(const Vec& cL, const DictionaryMatrix& A) {
  if (A.basis != Basis::legendre) throw ArgumentError("dictionary is not a Legendre dictionary");
  if (cL.size() != A.cols()) throw DimensionError("coefficient length does not match the dictionary");
  if (A.normalized() && A.column_norms.size() != A.cols()) throw ArgumentError("column norm metadata is inconsistent");
  int nv = 0;
  for (const auto& c : A.columns)
    for (int v : c.factors()) nv = std::max(nv, v + 1);
  if (static_cast<int>(A.scaling.size()) < nv) throw ArgumentError("dictionary carries no scaling metadata");

  const auto lookup = index_lookup(A.columns);
  Vec out = Vec::Zero(A.cols());
  std::vector<std::pair<std::vector<int>, double>> terms, next;
  for (long j = 0; j < A.cols(); ++j) {
    if (cL[j] == 0.0) continue;
    const double w = A.normalized() ? cL[j] / A.column_norms[j] : cL[j];
    terms.assign(1, {{}, w});
    for (auto [v, k] : A.columns[j].powers()) {
      const auto q = legendre_coefficients(k, A.scaling[v].a, A.scaling[v].b);
      next.clear();
      for (const auto& [f, c] : terms)
        for (int e = 0; e <= k; ++e) {
          if (q[e] == 0.0) continue;
          auto g = f;
          g.insert(g.end(), e, v);
          next.emplace_back(std::move(g), c * q[e]);
        }
      terms.swap(next);
    }
    for (const auto& [f, c] : terms) out[lookup.at(f)] += c;
  }
  return out;
}

// Monomial-coefficient image of every Legendre column: an upper-triangular
// matrix in graded order.
inline Mat change_of_basis(const DictionaryMatrix& A) {
  Mat T(A.cols(), A.cols());
  Vec e = Vec::Zero(A.cols());
  for (long j = 0; j < A.cols(); ++j) {
    e[j] = 1.0;
    T.col(j) = legendre_to_monomial(e, A);
    e[j] = 0.0;
  }
  return T;
}

// Inverse of legendre_to_monomial.
inline Vec monomial_to_legendre(const Vec& cm, const DictionaryMatrix& A) {
  const Mat T = change_of_basis(A);
  return T.triangularView<Eigen::Upper>().solve(cm);
}

// Evaluates sum_j c_j * monomial_j(x) at each row of X.
inline Vec evaluate_monomials(const std::vector<MultiIndex>& cols, const Vec& c, const Mat& X) {
  Vec out = Vec::Zero(X.rows());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (c[static_cast<long>(j)] == 0.0) continue;
    Vec t = Vec::Constant(X.rows(), c[static_cast<long>(j)]);
    for (int v : cols[j].factors()) t.array() *= X.col(v).array();
    out += t;
  }
  return out;
}

}  // namespace sparse_cyclic
