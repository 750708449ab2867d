#pragma once

#include <algorithm>
#include <string>

#include "prox.hpp"

namespace sparse_cyclic {

// min ||c||_1  subject to  ||A c - V||_2 <= sigma.
struct BasisPursuitProblem {
  Mat A;
  Vec V;
  double sigma = 0.0;
};

enum class InitialPoint { velocity, zero };

struct SolverConfig {
  double gamma = 0.0;         // prox step; <= 0 selects gamma_scale * ||A^T V||_inf
  double gamma_scale = 0.05;
  double mu = 1.0;            // relaxation in (0, 2]
  long max_iters = 100000;
  double tol = 1e-8;          // stop when ||dc|| <= tol * ||c|| and the iterate is feasible
  double feasibility_tol = 1e-6;  // relative slack on sigma in the feasibility test
  InitialPoint init = InitialPoint::velocity;

  bool operator==(const SolverConfig&) const = default;
};

struct Solution {
  Vec c;
  Vec w;
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;
  double gamma = 0.0;
};

inline void validate(const BasisPursuitProblem& p) {
  if (p.A.rows() != p.V.size()) throw DimensionError("dictionary and velocity row counts differ");
  if (!(p.sigma >= 0)) throw ArgumentError("sigma must be nonnegative");
}

inline void validate(const SolverConfig& c) {
  if (!(c.mu > 0 && c.mu <= 2)) throw ArgumentError("mu must lie in (0, 2]");
  if (c.max_iters < 1) throw ArgumentError("max_iters must be positive");
  if (!(c.tol > 0)) throw ArgumentError("tol must be positive");
  if (!(c.feasibility_tol >= 0)) throw ArgumentError("feasibility_tol must be nonnegative");
}

inline double resolve_gamma(const BasisPursuitProblem& p, const SolverConfig& cfg) {
  if (cfg.gamma > 0) return cfg.gamma;
  const double g = cfg.gamma_scale * (p.A.transpose() * p.V).cwiseAbs().maxCoeff();
  return g > 0 ? g : 1.0;
}

// Relaxed Douglas-Rachford on F1(w,c) = ||c||_1 + indicator(||w - V|| <= sigma)
// and F2 = indicator(w = A c):
//   x <- (1 - mu/2) x + (mu/2) rprox_F2(rprox_F1(x)),  rprox = 2 prox - I,
// followed by one prox_F1 of the final iterate. Convergence needs a small
// change in c and a returned c with ||A c - V|| <= sigma + slack, where
// slack = min(feasibility_tol * sigma, tol * (1 + ||V||)), floored at
// 1e-12 * (1 + ||V||) for round-off.
inline Solution douglas_rachford(const BasisPursuitProblem& problem, const SolverConfig& cfg = {}) {
  validate(problem);
  validate(cfg);
  const Vec& V = problem.V;
  const double sigma = problem.sigma;
  const double gamma = resolve_gamma(problem, cfg);
  const ProxF2 prox2(problem.A);

  Vec w = cfg.init == InitialPoint::velocity ? V : Vec(Vec::Zero(V.size()));
  Vec c = Vec::Zero(problem.A.cols());
  const double a = 1.0 - cfg.mu / 2.0, b = cfg.mu / 2.0;

  Solution sol;
  sol.gamma = gamma;
  const double vnorm = V.norm();
  const double slack =
      std::max(std::min(cfg.feasibility_tol * sigma, cfg.tol * (1.0 + vnorm)), 1e-12 * (1.0 + vnorm));
  long next_check = 0;
  long it = 0;
  for (; it < cfg.max_iters; ++it) {
    auto [pw, pc] = prox_f1(w, c, gamma, V, sigma);
    const Vec rw = 2.0 * pw - w;
    const Vec rc = 2.0 * pc - c;
    auto [qw, qc] = prox2(rw, rc);
    const Vec wn = a * w + b * (2.0 * qw - rw);
    const Vec cn = a * c + b * (2.0 * qc - rc);
    const double change = (cn - c).norm();
    const double scale = c.norm();
    w = wn;
    c = cn;
    if (change <= cfg.tol * scale && it >= next_check) {
      // Feasibility costs a product with A, so it is tested every 10th iteration at most.
      if ((problem.A * soft_threshold(c, gamma) - V).norm() <= sigma + slack) {
        sol.converged = true;
        ++it;
        break;
      }
      next_check = it + 10;
    }
  }
  auto [fw, fc] = prox_f1(w, c, gamma, V, sigma);
  sol.c = std::move(fc);
  sol.w = std::move(fw);
  sol.iterations = it;
  sol.residual = (problem.A * sol.c - V).norm();
  return sol;
}

}  // namespace sparse_cyclic
