#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "../dictionary/dictionary.hpp"
#include "least_squares.hpp"

namespace sparse_cyclic {

// Indices with |c_j| > rel * max |c|, ascending.
inline std::vector<int> support_threshold(const Vec& c, double rel = 1e-4) {
  std::vector<int> s;
  if (c.size() == 0) return s;
  const double cut = rel * c.cwiseAbs().maxCoeff();
  for (long j = 0; j < c.size(); ++j)
    if (std::abs(c[j]) > cut && c[j] != 0.0) s.push_back(static_cast<int>(j));
  return s;
}

// The s largest-magnitude entries (ties go to the lower index), ascending.
inline std::vector<int> top_s(const Vec& c, int s) {
  std::vector<int> idx(static_cast<std::size_t>(c.size()));
  std::iota(idx.begin(), idx.end(), 0);
  s = std::clamp(s, 0, static_cast<int>(c.size()));
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(c[a]) > std::abs(c[b]); });
  idx.resize(static_cast<std::size_t>(s));
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Every monomial dividing one of the selected ones.
inline std::vector<int> monomial_closure(const std::vector<MultiIndex>& cols, const std::vector<int>& sel) {
  const auto lookup = index_lookup(cols);
  std::set<int> out;
  for (int j : sel) {
    const auto pw = cols[j].powers();
    std::vector<int> e(pw.size(), 0);
    while (true) {
      std::vector<int> f;
      for (std::size_t q = 0; q < pw.size(); ++q) f.insert(f.end(), e[q], pw[q].first);
      out.insert(lookup.at(f));
      std::size_t q = 0;
      while (q < pw.size() && e[q] == pw[q].second) e[q++] = 0;
      if (q == pw.size()) break;
      ++e[q];
    }
  }
  return {out.begin(), out.end()};
}

struct SupportConfig {
  double noise_floor = 0.5;     // drop Legendre entries with |c| <= noise_floor * sigma
  double rel_threshold = 1e-4;  // relative cut on debiased monomial coefficients
  int sparsity = 0;             // > 0: keep exactly this many terms
  int max_rounds = 20;

  bool operator==(const SupportConfig&) const = default;
};

struct SupportResult {
  std::vector<int> candidates;  // monomial closure of the retained Legendre terms
  std::vector<int> support;
  Vec coefficients;             // debiased, monomial basis
};

namespace detail {

// Debias, dropping columns reported as dependent until the fit is well posed.
inline Vec robust_debias(const Mat& A, const Vec& V, std::vector<int>& S) {
  while (true) {
    try {
      return debias(A, V, S);
    } catch (const RankDeficientError& e) {
      std::vector<int> keep;
      std::set_difference(S.begin(), S.end(), e.dependent.begin(), e.dependent.end(), std::back_inserter(keep));
      if (keep.size() == S.size()) throw;
      S = std::move(keep);
    }
  }
}

}  // namespace detail

// Turns a Legendre-basis solution into a debiased monomial model. A Legendre
// term of degree d expands into all monomials it divides, so the candidate
// set is the closure of the significant Legendre terms; pruning then happens
// on debiased monomial coefficients.
inline SupportResult identify_support(const Vec& cL, const std::vector<MultiIndex>& cols,
                                      const Mat& A_monomial, const Vec& V, double sigma,
                                      const SupportConfig& cfg = {}) {
  SupportResult r;
  r.coefficients = Vec::Zero(A_monomial.cols());
  std::vector<int> sel;
  for (long j = 0; j < cL.size(); ++j)
    if (std::abs(cL[j]) > cfg.noise_floor * sigma && cL[j] != 0.0) sel.push_back(static_cast<int>(j));
  if (sel.empty()) return r;

  r.candidates = monomial_closure(cols, sel);
  while (static_cast<long>(r.candidates.size()) >= A_monomial.rows() && sel.size() > 1) {
    auto weakest = std::min_element(sel.begin(), sel.end(),
                                    [&](int a, int b) { return std::abs(cL[a]) < std::abs(cL[b]); });
    sel.erase(weakest);
    r.candidates = monomial_closure(cols, sel);
  }

  std::vector<int> S = r.candidates;
  Vec c = detail::robust_debias(A_monomial, V, S);
  if (cfg.sparsity > 0) {
    S = top_s(c, cfg.sparsity);
    c = detail::robust_debias(A_monomial, V, S);
  } else {
    for (int round = 0; round < cfg.max_rounds; ++round) {
      std::vector<int> next = support_threshold(c, cfg.rel_threshold);
      if (next == S) break;
      S = std::move(next);
      c = detail::robust_debias(A_monomial, V, S);
    }
  }
  r.support = S;
  r.coefficients = c;
  return r;
}

}  // namespace sparse_cyclic
