#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "../core.hpp"

namespace sparse_cyclic {

// A monomial prod_v x_v^{e_v}, stored as the sorted multiset of its factors
// (x0^2 x3 is {0,0,3}). The empty multiset is the constant.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> factors) : vars_(std::move(factors)) {
    std::sort(vars_.begin(), vars_.end());
  }

  static MultiIndex from_powers(const std::vector<std::pair<int, int>>& powers) {
    std::vector<int> f;
    for (auto [v, e] : powers) f.insert(f.end(), e, v);
    return MultiIndex(std::move(f));
  }

  const std::vector<int>& factors() const { return vars_; }
  int degree() const { return static_cast<int>(vars_.size()); }

  int exponent(int v) const {
    return static_cast<int>(std::count(vars_.begin(), vars_.end(), v));
  }

  // (variable, exponent) pairs in increasing variable order.
  std::vector<std::pair<int, int>> powers() const {
    std::vector<std::pair<int, int>> out;
    for (int v : vars_) {
      if (!out.empty() && out.back().first == v)
        ++out.back().second;
      else
        out.emplace_back(v, 1);
    }
    return out;
  }

  // Graded lexicographic: total degree first, then the sorted factor lists.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.vars_ < b.vars_;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.vars_ == b.vars_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

  std::string label(const std::vector<std::string>& names) const {
    if (vars_.empty()) return "1";
    std::string s;
    for (auto [v, e] : powers()) {
      if (!s.empty()) s += "*";
      s += v < static_cast<int>(names.size()) ? names[v] : "x" + std::to_string(v);
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::vector<int> vars_;
};

constexpr long kDefaultColumnCap = 10'000'000;

inline long column_count(int n_vars, int p) { return binomial(n_vars + p, p); }

// All multi-indices of total degree <= p over n_vars variables, graded-lex.
inline std::vector<MultiIndex> enumerate_multi_indices(int n_vars, int p,
                                                       long cap = kDefaultColumnCap) {
  if (n_vars < 0 || p < 0) throw ArgumentError("negative variable count or degree");
  const long count = column_count(n_vars, p);
  if (count > cap)
    throw CapacityError(std::to_string(count) + " candidate functions exceed the cap of " +
                        std::to_string(cap));
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(count));
  out.emplace_back();
  std::vector<int> cur;
  for (int d = 1; d <= p; ++d) {
    if (n_vars == 0) break;
    cur.assign(d, 0);
    while (true) {
      out.emplace_back(cur);
      int pos = d - 1;
      while (pos >= 0 && cur[pos] == n_vars - 1) --pos;
      if (pos < 0) break;
      ++cur[pos];
      for (int q = pos + 1; q < d; ++q) cur[q] = cur[pos];
    }
  }
  return out;
}

inline std::map<std::vector<int>, int> index_lookup(const std::vector<MultiIndex>& cols) {
  std::map<std::vector<int>, int> m;
  for (std::size_t j = 0; j < cols.size(); ++j) m.emplace(cols[j].factors(), static_cast<int>(j));
  return m;
}

}  // namespace sparse_cyclic
