#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "../analysis/metrics.hpp"
#include "../dictionary/dictionary.hpp"
#include "../dynamics/initial.hpp"
#include "../dynamics/integrate.hpp"
#include "../dynamics/noise.hpp"
#include "../dynamics/velocity.hpp"
#include "../solver/douglas_rachford.hpp"
#include "../solver/least_squares.hpp"
#include "../solver/support.hpp"
#include "config.hpp"
#include "models.hpp"

namespace sparse_cyclic {

struct EquationResult {
  std::string name;
  double sigma = 0.0;
  Vec c_legendre;        // L-BP solution, normalized Legendre basis
  Vec c_monomial;        // the same model in monomials, before debiasing
  Vec c_learned;         // reported model (debiased unless disabled)
  Vec c_exact;           // monomial basis
  Vec c_exact_legendre;  // normalized Legendre basis
  Vec c_least_squares;
  std::vector<int> candidates;
  std::vector<int> support;
  std::vector<int> exact_support;
  long iterations = 0;
  bool converged = false;
  double residual = 0.0;
  double gamma = 0.0;
  double e_c_lbp = 0.0;       // Legendre coordinates, before debiasing
  double e_c_monomial = 0.0;  // monomial coordinates, before debiasing
  double e_c = 0.0;           // reported model
  double e_c_ls = 0.0;
  double e_u = std::numeric_limits<double>::quiet_NaN();
  bool support_exact = false;
  SupportCheck prop2;
};

struct ExperimentResult {
  std::string config_echo;
  ExperimentConfig config;
  long rows = 0;
  long cols = 0;
  std::vector<std::string> column_labels;
  std::vector<EquationResult> equations;
  std::vector<StencilPolynomial> learned;  // reported model per equation
  bool eu_diverged = false;
  std::string started;
  std::string finished;
  double seconds = 0.0;
};

namespace detail {

template <class F>
auto run_stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

inline std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

inline int block_origin(const ExperimentConfig& c, int axis) {
  if (c.block_start.empty()) return c.n / 2 - c.block_size / 2;
  return c.block_start.at(static_cast<std::size_t>(axis));
}

inline NoiseSpec noise_for(const ExperimentConfig& c) {
  NoiseSpec s = c.noise;
  if (s.seed == 0) s.seed = c.seed;
  return s;
}

// 1D states are written as a single row.
inline Mat as_grid(const State1D& x) { return x.transpose(); }
inline Mat as_grid(const State2D& x) { return x.values; }

constexpr std::uint64_t kNoiseStream = 1ull << 32;

template <class S>
struct SystemTag {
  using State = S;
};

// Calls f(tag, init, rhs, local, fields) with the pieces of the configured system:
// init(rng) -> S, rhs(S) -> S, local(S, block) -> CyclicDataMatrix,
// fields(S) -> per-equation components, block -> restricted sample indices.
template <class Fn>
decltype(auto) visit_system(const ExperimentConfig& c, Fn&& f) {
  const int n = c.n, r = c.radius, B = c.block_size;
  const double h = c.spacing();
  switch (c.system) {
    case SystemKind::lorenz96:
      return f(
          SystemTag<State1D>{}, [n](Rng& rng) { return uniform_state(n, rng); },
          [F = c.F](const State1D& u) { return lorenz96_rhs(u, F); },
          [r](const State1D& u, const std::vector<long>& b) { return local_data_1d(u, r, b); },
          [](const State1D& v) { return std::vector<State1D>{v}; }, block_indices_1d(n, block_origin(c, 0), B));
    case SystemKind::burgers2d:
      return f(
          SystemTag<State2D>{}, [n, h](Rng& rng) { return burgers_initial(n, h, rng); },
          [a = c.alpha](const State2D& u) { return burgers2d_rhs(u, a); },
          [r](const State2D& u, const std::vector<long>& b) { return local_data_2d(u, r, b); },
          [](const State2D& v) { return std::vector<State2D>{v}; },
          block_indices_2d(n, block_origin(c, 0), block_origin(c, 1), B, B));
    case SystemKind::grayscott:
      return f(
          SystemTag<TwoComponentState>{}, [n, h](Rng& rng) { return grayscott_initial(n, h, rng); },
          [p = c.gs](const TwoComponentState& s) { return grayscott_rhs(s, p); },
          [r](const TwoComponentState& s, const std::vector<long>& b) { return local_data_2d(s, r, b); },
          [](const TwoComponentState& s) { return std::vector<State2D>{s.u, s.v}; },
          block_indices_2d(n, block_origin(c, 0), block_origin(c, 1), B, B));
  }
  throw ConfigError("unknown system");
}

template <class S, class Init, class Rhs>
Burst<S> simulate_burst(const ExperimentConfig& c, int k, Init& init, Rhs& rhs) {
  Burst<S> burst = run_stage("simulate", [&] {
    Rng rng(c.seed, static_cast<std::uint64_t>(k));
    return integrate(rhs, init(rng), c.dt_fine, c.record_times, k);
  });
  return run_stage("noise", [&] { return add_noise(std::move(burst), noise_for(c), kNoiseStream + k); });
}

template <class S, class Init>
S initial_state(const ExperimentConfig& c, int k, Init& init) {
  Rng rng(c.seed, static_cast<std::uint64_t>(k));
  return init(rng);
}

// Everything the generic pipeline needs from one system.
struct Collected {
  std::vector<CyclicDataMatrix> data;
  std::vector<std::vector<Vec>> velocity;  // [equation][burst]
};

inline Collected collect_system(const ExperimentConfig& c) {
  return visit_system(c, [&](auto tag, auto init, auto rhs, auto local, auto fields, std::vector<long> block) {
    using S = typename decltype(tag)::State;
    Collected out;
    out.velocity.resize(static_cast<std::size_t>(c.equations()));
    for (int k = 0; k < c.bursts; ++k) {
      const Burst<S> burst = simulate_burst<S>(c, k, init, rhs);
      const S vel = run_stage("velocity", [&] {
        if (c.velocity == VelocitySource::exact) return S(rhs(burst.snapshots.front()));
        return approximate_velocity(burst).front();
      });
      run_stage("dictionary", [&] {
        CyclicDataMatrix d = local(burst.snapshots.front(), block);
        d.burst_id = k;
        d.time = burst.times.front();
        out.data.push_back(std::move(d));
        const auto comps = fields(vel);
        for (int e = 0; e < c.equations(); ++e) out.velocity[e].push_back(restrict_values(comps[e], block));
        return 0;
      });
    }
    return out;
  });
}

// Relative error per component between exact and learned evolutions from
// the clean initial state of burst 0.
inline std::vector<double> evolution_error(const ExperimentConfig& c, const StencilSystem& learned) {
  return visit_system(c, [&](auto tag, auto init, auto rhs, auto, auto fields, auto) {
    using S = typename decltype(tag)::State;
    const S s0 = initial_state<S>(c, 0, init);
    const long steps = std::lround(c.eu_horizon / c.eu_dt);
    const S a = evolve(rhs, s0, c.eu_dt, steps);
    const S b = evolve(learned, s0, c.eu_dt, steps);
    const auto fa = fields(a), fb = fields(b);
    std::vector<double> e;
    for (std::size_t q = 0; q < fa.size(); ++q) e.push_back(solution_error(as_grid(fa[q]), as_grid(fb[q])));
    return e;
  });
}

}  // namespace detail

// Data, dictionaries and velocities for one configuration.
struct Prepared {
  CyclicDataMatrix data;
  DictionaryMatrix legendre;  // column-normalized
  DictionaryMatrix monomial;
  std::vector<Vec> velocity;  // one per equation
};

inline Prepared prepare(const ExperimentConfig& cfg) {
  detail::run_stage("config", [&] {
    validate(cfg);
    return 0;
  });
  detail::Collected col = detail::collect_system(cfg);
  Prepared p;
  p.velocity.resize(static_cast<std::size_t>(cfg.equations()));
  detail::run_stage("dictionary", [&] {
    p.data = stack_data(col.data);
    for (int e = 0; e < cfg.equations(); ++e) {
      long len = 0;
      for (const auto& v : col.velocity[e]) len += v.size();
      p.velocity[e].resize(len);
      long at = 0;
      for (const auto& v : col.velocity[e]) {
        p.velocity[e].segment(at, v.size()) = v;
        at += v.size();
      }
    }
    const auto scaling = cfg.scaling == ScalingPolicy::global ? global_scaling(p.data) : component_scaling(p.data);
    p.legendre = normalize_columns(legendre_dictionary(p.data, cfg.degree, scaling));
    p.monomial = monomial_dictionary(p.data, cfg.degree);
    return 0;
  });
  return p;
}

// Recorded bursts (after noise), one frame per burst and record time.
struct Frame {
  int burst = 0;
  double time = 0.0;
  std::vector<Mat> components;
};

inline std::vector<Frame> simulate(const ExperimentConfig& cfg) {
  detail::run_stage("config", [&] {
    validate(cfg);
    return 0;
  });
  return detail::visit_system(cfg, [&](auto tag, auto init, auto rhs, auto, auto fields, auto) {
    using S = typename decltype(tag)::State;
    std::vector<Frame> out;
    for (int k = 0; k < cfg.bursts; ++k) {
      const Burst<S> b = detail::simulate_burst<S>(cfg, k, init, rhs);
      for (std::size_t t = 0; t < b.snapshots.size(); ++t) {
        Frame f{k, b.times[t], {}};
        for (const auto& comp : fields(b.snapshots[t])) f.components.push_back(detail::as_grid(comp));
        out.push_back(std::move(f));
      }
    }
    return out;
  });
}

// Simulate, (optionally) perturb, difference, build the localized Legendre
// dictionary, solve L-BP per equation, map to monomials, debias, score.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& echo = "") {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.started = detail::timestamp();
  res.config = cfg;
  res.config_echo = echo.empty() ? to_json(cfg).dump(2) : echo;
  const Prepared prep = prepare(cfg);
  const CyclicDataMatrix& data = prep.data;
  const DictionaryMatrix& AL = prep.legendre;
  const DictionaryMatrix& Am = prep.monomial;
  const std::vector<Vec>& V = prep.velocity;
  res.rows = AL.rows();
  res.cols = AL.cols();
  res.column_labels = Am.column_labels();

  const auto exact = detail::run_stage("metrics", [&] { return exact_model(cfg); });
  std::vector<StencilPolynomial> learned;
  for (int e = 0; e < cfg.equations(); ++e) {
    EquationResult er;
    er.name = component_name(e);
    er.sigma = cfg.sigma_for(e);
    const Solution sol = detail::run_stage("solve", [&] {
      return douglas_rachford(BasisPursuitProblem{AL.entries, V[e], er.sigma}, cfg.solver);
    });
    er.c_legendre = sol.c;
    er.iterations = sol.iterations;
    er.converged = sol.converged;
    er.residual = sol.residual;
    er.gamma = sol.gamma;
    er.c_monomial = detail::run_stage("basis_change", [&] { return legendre_to_monomial(sol.c, AL); });

    detail::run_stage("metrics", [&] {
      er.c_exact = to_coefficients(exact[e], data.vars, Am.columns);
      er.exact_support = nonzero_indices(er.c_exact);
      er.c_exact_legendre = monomial_to_legendre(er.c_exact, AL);
      return 0;
    });

    detail::run_stage("debias", [&] {
      if (cfg.debias) {
        SupportConfig sc = cfg.support;
        if (cfg.known_sparsity && sc.sparsity <= 0) sc.sparsity = static_cast<int>(er.exact_support.size());
        SupportResult sr = identify_support(er.c_legendre, AL.columns, Am.entries, V[e], er.sigma, sc);
        er.candidates = sr.candidates;
        er.support = sr.support;
        er.c_learned = sr.coefficients;
      } else {
        er.c_learned = er.c_monomial;
        er.support = cfg.known_sparsity ? top_s(er.c_monomial, static_cast<int>(er.exact_support.size()))
                                        : support_threshold(er.c_monomial, cfg.support.rel_threshold);
      }
      return 0;
    });

    detail::run_stage("metrics", [&] {
      er.e_c_lbp = coefficient_error(er.c_exact_legendre, er.c_legendre);
      er.e_c_monomial = coefficient_error(er.c_exact, er.c_monomial);
      er.e_c = coefficient_error(er.c_exact, er.c_learned);
      er.c_least_squares = least_squares_baseline(Am.entries, V[e], cfg.least_squares);
      er.e_c_ls = coefficient_error(er.c_exact, er.c_least_squares);
      er.support_exact = er.support == er.exact_support;
      double cmin = std::numeric_limits<double>::infinity();
      for (int j : er.exact_support) cmin = std::min(cmin, std::abs(er.c_exact[j]));
      er.prop2 = support_check(er.c_learned, er.exact_support, static_cast<int>(er.exact_support.size()), er.sigma,
                               cmin, cfg.d_assumed);
      return 0;
    });
    Vec model = er.c_learned;
    if (!cfg.debias) {
      model = Vec::Zero(model.size());
      for (int j : er.support) model[j] = er.c_monomial[j];
    }
    learned.push_back(from_coefficients(model, data.vars, Am.columns));
    res.equations.push_back(std::move(er));
  }

  res.learned = learned;
  if (cfg.eu_horizon > 0) {
    try {
      const auto eu = detail::evolution_error(cfg, StencilSystem(learned));
      for (std::size_t e = 0; e < eu.size() && e < res.equations.size(); ++e) res.equations[e].e_u = eu[e];
    } catch (const DivergenceError&) {
      // A diverging learned model is a result, not a failure of the run.
      res.eu_diverged = true;
    } catch (const std::exception& err) {
      throw StageError("evolution", err.what());
    }
  }
  res.finished = detail::timestamp();
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace sparse_cyclic
