#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "../dictionary/dictionary.hpp"
#include "config.hpp"

namespace sparse_cyclic {

// A polynomial in stencil values: sum_t coef_t * prod_f x_f.
struct StencilTerm {
  double coef = 0.0;
  std::vector<LocalVariable> factors;
};

using StencilPolynomial = std::vector<StencilTerm>;

inline bool operator<(const LocalVariable& a, const LocalVariable& b) {
  return std::tie(a.component, a.di, a.dj) < std::tie(b.component, b.di, b.dj);
}
inline bool operator==(const LocalVariable& a, const LocalVariable& b) {
  return a.component == b.component && a.di == b.di && a.dj == b.dj;
}

// Semi-discrete right-hand sides written as stencil polynomials.
inline std::vector<StencilPolynomial> exact_model(const ExperimentConfig& c) {
  using LV = LocalVariable;
  switch (c.system) {
    case SystemKind::lorenz96:
      return {{{c.F, {}}, {-1.0, {LV{0, 0, 0}}}, {-1.0, {LV{0, -2, 0}, LV{0, -1, 0}}}, {1.0, {LV{0, -1, 0}, LV{0, 1, 0}}}}};
    case SystemKind::burgers2d: {
      const double h = c.spacing();
      const double d = c.alpha / (h * h), q = 1.0 / (4.0 * h);
      return {{{-4.0 * d, {LV{0, 0, 0}}},
               {d, {LV{0, 1, 0}}},
               {d, {LV{0, -1, 0}}},
               {d, {LV{0, 0, 1}}},
               {d, {LV{0, 0, -1}}},
               {q, {LV{0, 1, 0}, LV{0, 1, 0}}},
               {-q, {LV{0, -1, 0}, LV{0, -1, 0}}},
               {q, {LV{0, 0, 1}, LV{0, 0, 1}}},
               {-q, {LV{0, 0, -1}, LV{0, 0, -1}}}}};
    }
    case SystemKind::grayscott: {
      const double h2 = c.spacing() * c.spacing();
      auto diffusion = [&](int comp, double r, double decay) {
        StencilPolynomial p;
        p.push_back({-r * 10.0 / (3.0 * h2) - decay, {LV{comp, 0, 0}}});
        for (auto [a, b] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) p.push_back({r * 2.0 / (3.0 * h2), {LV{comp, a, b}}});
        for (auto [a, b] : {std::pair{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) p.push_back({r / (6.0 * h2), {LV{comp, a, b}}});
        return p;
      };
      const LV u{0, 0, 0}, v{1, 0, 0};
      StencilPolynomial pu = diffusion(0, c.gs.r_u, c.gs.f);
      pu.push_back({c.gs.f, {}});
      pu.push_back({-1.0, {u, v, v}});
      StencilPolynomial pv = diffusion(1, c.gs.r_v, c.gs.f + c.gs.k);
      pv.push_back({1.0, {u, v, v}});
      return {pu, pv};
    }
  }
  return {};
}

// Reads (r_u, r_v, f, k) back from learned Gray-Scott stencil coefficients.
// The eight neighbour weights of the 9-point Laplacian sum to 10 r / (3 h^2);
// the centre weight adds -(decay).
inline GrayScottParams grayscott_parameters(const StencilPolynomial& pu, const StencilPolynomial& pv, double h) {
  auto linear = [](const StencilPolynomial& p, int comp, double& centre, double& neighbours) {
    centre = neighbours = 0.0;
    for (const auto& t : p) {
      if (t.factors.size() != 1 || t.factors[0].component != comp) continue;
      const auto& lv = t.factors[0];
      (lv.di == 0 && lv.dj == 0 ? centre : neighbours) += t.coef;
    }
  };
  double cu = 0, nu = 0, cv = 0, nv = 0, constant = 0;
  linear(pu, 0, cu, nu);
  linear(pv, 1, cv, nv);
  for (const auto& t : pu)
    if (t.factors.empty()) constant += t.coef;
  GrayScottParams g;
  g.r_u = 3.0 * h * h * nu / 10.0;
  g.r_v = 3.0 * h * h * nv / 10.0;
  g.f = constant;
  g.k = -(cv + nv) - g.f;
  return g;
}

// Coefficient vector of a stencil polynomial over a dictionary's columns.
inline Vec to_coefficients(const StencilPolynomial& poly, const std::vector<LocalVariable>& vars,
                           const std::vector<MultiIndex>& cols) {
  const auto lookup = index_lookup(cols);
  Vec c = Vec::Zero(static_cast<long>(cols.size()));
  for (const auto& t : poly) {
    std::vector<int> f;
    for (const auto& lv : t.factors) {
      auto it = std::find(vars.begin(), vars.end(), lv);
      if (it == vars.end())
        throw ConfigError("stencil variable " + variable_label(lv, 2) + " lies outside the localization window");
      f.push_back(static_cast<int>(it - vars.begin()));
    }
    std::sort(f.begin(), f.end());
    auto pos = lookup.find(f);
    if (pos == lookup.end()) throw ConfigError("term degree exceeds the dictionary degree");
    c[pos->second] += t.coef;
  }
  return c;
}

inline StencilPolynomial from_coefficients(const Vec& c, const std::vector<LocalVariable>& vars,
                                           const std::vector<MultiIndex>& cols) {
  StencilPolynomial p;
  for (long j = 0; j < c.size(); ++j) {
    if (c[j] == 0.0) continue;
    StencilTerm t{c[j], {}};
    for (int v : cols[j].factors()) t.factors.push_back(vars[v]);
    p.push_back(std::move(t));
  }
  return p;
}

// out(i, j) = x((i + di) mod rows, (j + dj) mod cols), by block copies.
inline Mat shifted(const Mat& x, int di, int dj) {
  const long R = x.rows(), C = x.cols();
  const long si = ((di % R) + R) % R, sj = ((dj % C) + C) % C;
  Mat t(R, C);
  t.topRows(R - si) = x.bottomRows(R - si);
  if (si) t.bottomRows(si) = x.topRows(si);
  if (sj == 0) return t;
  Mat out(R, C);
  out.leftCols(C - sj) = t.rightCols(C - sj);
  out.rightCols(sj) = t.leftCols(sj);
  return out;
}

// Evaluates stencil polynomials on periodic fields (1D fields are n x 1).
class StencilSystem {
 public:
  explicit StencilSystem(std::vector<StencilPolynomial> eqs) : eqs_(std::move(eqs)) {}

  std::vector<Mat> evaluate(const std::vector<const Mat*>& fields) const {
    std::map<LocalVariable, Mat> cache;
    auto get = [&](const LocalVariable& lv) -> const Mat& {
      auto it = cache.find(lv);
      if (it != cache.end()) return it->second;
      return cache.emplace(lv, shifted(*fields.at(lv.component), lv.di, lv.dj)).first->second;
    };
    const long R = fields[0]->rows(), C = fields[0]->cols();
    std::vector<Mat> out;
    for (const auto& eq : eqs_) {
      Eigen::ArrayXXd acc = Eigen::ArrayXXd::Zero(R, C);
      for (const auto& t : eq) {
        if (t.factors.empty()) {
          acc += t.coef;
          continue;
        }
        Eigen::ArrayXXd term = t.coef * get(t.factors[0]).array();
        for (std::size_t f = 1; f < t.factors.size(); ++f) term *= get(t.factors[f]).array();
        acc += term;
      }
      out.push_back(acc.matrix());
    }
    return out;
  }

  State1D operator()(const State1D& u) const {
    const Mat m = u;
    return evaluate({&m})[0];
  }

  State2D operator()(const State2D& u) const { return State2D(evaluate({&u.values})[0], u.h); }

  TwoComponentState operator()(const TwoComponentState& s) const {
    auto r = evaluate({&s.u.values, &s.v.values});
    return {State2D(std::move(r[0]), s.u.h), State2D(std::move(r[1]), s.v.h)};
  }

  const std::vector<StencilPolynomial>& equations() const { return eqs_; }

 private:
  std::vector<StencilPolynomial> eqs_;
};

}  // namespace sparse_cyclic
