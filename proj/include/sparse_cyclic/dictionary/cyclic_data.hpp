#pragma once

#include <string>
#include <vector>

#include "../dynamics/states.hpp"

namespace sparse_cyclic {

// Geometry of the snapshot a data matrix was built from.
struct Layout {
  int dims = 1;        // 1 or 2 spatial axes
  int n = 0;           // points per axis
  int components = 1;  // 1, or 2 for (u, v)

  long points() const { return dims == 1 ? n : static_cast<long>(n) * n; }
};

// One column of a data matrix: component c at offset (di, dj) from the row's centre.
struct LocalVariable {
  int component = 0;
  int di = 0;
  int dj = 0;
};

inline std::string component_name(int c) { return c == 0 ? "u" : c == 1 ? "v" : "w" + std::to_string(c); }

inline std::string variable_label(const LocalVariable& v, int dims) {
  std::string s = component_name(v.component) + "[" + std::to_string(v.di);
  if (dims == 2) s += "," + std::to_string(v.dj);
  return s + "]";
}

struct CyclicDataMatrix {
  Mat rows;
  std::vector<LocalVariable> vars;
  Layout layout;
  int burst_id = 0;
  double time = 0.0;

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& v : vars) out.push_back(variable_label(v, layout.dims));
    return out;
  }
};

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

// Row i is u shifted left by i: rows(i, j) = u[(i + j) mod n].
inline CyclicDataMatrix cyclic_data_1d(const State1D& u) {
  const int n = static_cast<int>(u.size());
  if (n < 1) throw DimensionError("empty state");
  CyclicDataMatrix d;
  d.layout = {1, n, 1};
  d.rows.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.rows(i, j) = u[(i + j) % n];
  for (int j = 0; j < n; ++j) d.vars.push_back({0, j, 0});
  return d;
}

namespace detail {

inline void fill_2d(CyclicDataMatrix& d, const Mat& g, int comp) {
  const int n = static_cast<int>(g.rows());
  const long nn = static_cast<long>(n) * n;
  for (int gi = 0; gi < n; ++gi)
    for (int ti = 0; ti < n; ++ti) {
      const long row = static_cast<long>(gi) * n + ti;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          d.rows(row, comp * nn + static_cast<long>(a) * n + b) = g((a + gi) % n, (b + ti) % n);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) d.vars.push_back({comp, a, b});
}

}  // namespace detail

// One row per shift pair (gamma, tau), lexicographic; each row is the
// shifted grid W(i,j) = u((i+gamma) mod n, (j+tau) mod n) flattened row-major.
inline CyclicDataMatrix cyclic_data_2d(const State2D& u) {
  require_square(u);
  const int n = u.n();
  const long nn = static_cast<long>(n) * n;
  CyclicDataMatrix d;
  d.layout = {2, n, 1};
  d.rows.resize(nn, nn);
  detail::fill_2d(d, u.values, 0);
  return d;
}

// Same shift pairs; u-variables first, then v-variables.
inline CyclicDataMatrix multicomponent_data(const TwoComponentState& s) {
  require_matching(s);
  const int n = s.u.n();
  const long nn = static_cast<long>(n) * n;
  CyclicDataMatrix d;
  d.layout = {2, n, 2};
  d.rows.resize(nn, 2 * nn);
  detail::fill_2d(d, s.u.values, 0);
  detail::fill_2d(d, s.v.values, 1);
  return d;
}

// Offsets within radius r in the order 0, 1, ..., r, -r, ..., -1.
inline std::vector<int> local_offsets(int r) {
  std::vector<int> o;
  for (int k = 0; k <= r; ++k) o.push_back(k);
  for (int k = -r; k < 0; ++k) o.push_back(k);
  return o;
}

// Local variable list: per component, the stencil window with the row
// offset outer and the column offset inner.
inline std::vector<LocalVariable> local_variables(int dims, int r, int components) {
  std::vector<LocalVariable> out;
  const auto offs = local_offsets(r);
  for (int c = 0; c < components; ++c) {
    if (dims == 1) {
      for (int a : offs) out.push_back({c, a, 0});
    } else {
      for (int a : offs)
        for (int b : offs) out.push_back({c, a, b});
    }
  }
  return out;
}

// Block of centre points. 1D: indices start..start+size-1. 2D: the
// size_i x size_j window at (i0, j0), listed row-major as linear indices
// i*n + j. Indices wrap periodically.
inline std::vector<long> block_indices_1d(int n, int start, int size) {
  if (size < 1 || size > n) throw DimensionError("block size " + std::to_string(size) + " does not fit n=" + std::to_string(n));
  std::vector<long> out;
  for (int k = 0; k < size; ++k) out.push_back(wrap(start + k, n));
  return out;
}

inline std::vector<long> block_indices_2d(int n, int i0, int j0, int size_i, int size_j) {
  if (size_i < 1 || size_j < 1 || size_i > n || size_j > n)
    throw DimensionError("block " + std::to_string(size_i) + "x" + std::to_string(size_j) +
                         " does not fit a " + std::to_string(n) + "x" + std::to_string(n) + " grid");
  std::vector<long> out;
  for (int a = 0; a < size_i; ++a)
    for (int b = 0; b < size_j; ++b)
      out.push_back(static_cast<long>(wrap(i0 + a, n)) * n + wrap(j0 + b, n));
  return out;
}

// Keep the columns of the radius-r stencil around each row's centre and the
// rows whose centre lies in the block. Works on full cyclic matrices.
inline CyclicDataMatrix localize_restrict(const CyclicDataMatrix& data, int r,
                                          const std::vector<long>& block) {
  const Layout& L = data.layout;
  if (r < 0) throw ArgumentError("localization radius must be nonnegative");
  if (2 * r + 1 > L.n) throw DimensionError("stencil of radius " + std::to_string(r) + " exceeds the domain");
  if (static_cast<long>(block.size()) > L.points()) throw DimensionError("block larger than the domain");
  if (data.rows.rows() != L.points() || data.rows.cols() != L.points() * L.components)
    throw DimensionError("data matrix is not a full cyclic matrix for its layout");
  const auto vars = local_variables(L.dims, r, L.components);
  std::vector<long> cols;
  for (const auto& v : vars) {
    const long within = L.dims == 1 ? wrap(v.di, L.n)
                                    : static_cast<long>(wrap(v.di, L.n)) * L.n + wrap(v.dj, L.n);
    cols.push_back(v.component * L.points() + within);
  }
  CyclicDataMatrix out;
  out.layout = L;
  out.vars = vars;
  out.burst_id = data.burst_id;
  out.time = data.time;
  out.rows.resize(static_cast<long>(block.size()), static_cast<long>(cols.size()));
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block[i] < 0 || block[i] >= L.points()) throw DimensionError("block index out of range");
    for (std::size_t j = 0; j < cols.size(); ++j) out.rows(i, j) = data.rows(block[i], cols[j]);
  }
  return out;
}

// Direct construction of the localized, restricted matrix without forming
// the full cyclic matrix (which is n^2 x n^2 in 2D).
inline CyclicDataMatrix local_data_1d(const State1D& u, int r, const std::vector<long>& block) {
  const int n = static_cast<int>(u.size());
  if (2 * r + 1 > n) throw DimensionError("stencil exceeds the domain");
  CyclicDataMatrix d;
  d.layout = {1, n, 1};
  d.vars = local_variables(1, r, 1);
  d.rows.resize(static_cast<long>(block.size()), static_cast<long>(d.vars.size()));
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = 0; j < d.vars.size(); ++j)
      d.rows(i, j) = u[wrap(static_cast<int>(block[i]) + d.vars[j].di, n)];
  return d;
}

inline CyclicDataMatrix local_data_2d(const std::vector<const Mat*>& comps, int n, int r,
                                      const std::vector<long>& block) {
  if (2 * r + 1 > n) throw DimensionError("stencil exceeds the domain");
  CyclicDataMatrix d;
  d.layout = {2, n, static_cast<int>(comps.size())};
  d.vars = local_variables(2, r, static_cast<int>(comps.size()));
  d.rows.resize(static_cast<long>(block.size()), static_cast<long>(d.vars.size()));
  for (std::size_t i = 0; i < block.size(); ++i) {
    const int ci = static_cast<int>(block[i] / n), cj = static_cast<int>(block[i] % n);
    for (std::size_t j = 0; j < d.vars.size(); ++j) {
      const auto& v = d.vars[j];
      d.rows(i, j) = (*comps[v.component])(wrap(ci + v.di, n), wrap(cj + v.dj, n));
    }
  }
  return d;
}

inline CyclicDataMatrix local_data_2d(const State2D& u, int r, const std::vector<long>& block) {
  require_square(u);
  return local_data_2d({&u.values}, u.n(), r, block);
}

inline CyclicDataMatrix local_data_2d(const TwoComponentState& s, int r,
                                      const std::vector<long>& block) {
  require_matching(s);
  return local_data_2d({&s.u.values, &s.v.values}, s.u.n(), r, block);
}

// Field values at the block's centre points, aligned with the rows above.
inline Vec restrict_values(const State1D& f, const std::vector<long>& block) {
  Vec out(static_cast<long>(block.size()));
  for (std::size_t i = 0; i < block.size(); ++i) out[i] = f[block[i]];
  return out;
}

inline Vec restrict_values(const State2D& f, const std::vector<long>& block) {
  const int n = f.n();
  Vec out(static_cast<long>(block.size()));
  for (std::size_t i = 0; i < block.size(); ++i) out[i] = f.values(block[i] / n, block[i] % n);
  return out;
}

// Row-wise concatenation of data matrices with identical columns.
inline CyclicDataMatrix stack_data(const std::vector<CyclicDataMatrix>& parts) {
  if (parts.empty()) throw ArgumentError("nothing to stack");
  long rows = 0;
  for (const auto& p : parts) {
    if (p.rows.cols() != parts[0].rows.cols()) throw DimensionError("column mismatch while stacking");
    rows += p.rows.rows();
  }
  CyclicDataMatrix out = parts[0];
  out.rows.resize(rows, parts[0].rows.cols());
  long at = 0;
  for (const auto& p : parts) {
    out.rows.middleRows(at, p.rows.rows()) = p.rows;
    at += p.rows.rows();
  }
  return out;
}

}  // namespace sparse_cyclic
