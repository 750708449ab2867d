#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparse_cyclic.hpp"

namespace sc = sparse_cyclic;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool config_required = true) {
  auto* opt = cmd->add_option("--config", c.config, "JSON config file");
  if (config_required) opt->required();
  cmd->add_option("--seed", c.seed, "Override the config seed");
  cmd->add_option("--out", c.out, "Output path");
}

// Parsed config plus the exact input text as its echo.
struct Loaded {
  sc::ExperimentConfig cfg;
  std::string echo;
};

Loaded load(const Common& c) {
  Loaded l;
  l.echo = sc::read_text(c.config);
  l.cfg = sc::config_from_string(l.echo);
  if (c.seed) l.cfg.seed = *c.seed;
  return l;
}

void apply_debias(sc::ExperimentConfig& cfg, const std::optional<bool>& debias) {
  if (debias) cfg.debias = *debias;
}

// Writes to a file, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  sc::write_text(path, text);
}

std::string require_dir(const std::string& out, const std::string& cmd) {
  if (out.empty()) throw sc::ArgumentError(cmd + " needs --out DIR");
  fs::create_directories(out);
  return out;
}

void write_grid(const fs::path& p, const sc::Mat& m) {
  std::ofstream f(p);
  if (!f) throw sc::ArgumentError("cannot open '" + p.string() + "' for writing");
  sc::write_grid_csv(f, m);
}

int cmd_simulate(const Common& c) {
  const Loaded l = load(c);
  const std::string dir = require_dir(c.out, "simulate");
  const auto frames = sc::simulate(l.cfg);
  std::ofstream idx(fs::path(dir) / "index.csv");
  sc::write_csv_row(idx, {"burst", "time", "component", "file"});
  int last_burst = -1, t = 0;
  for (const auto& f : frames) {
    t = f.burst == last_burst ? t + 1 : 0;
    last_burst = f.burst;
    for (std::size_t q = 0; q < f.components.size(); ++q) {
      const std::string comp = sc::component_name(static_cast<int>(q));
      const std::string file = "burst" + std::to_string(f.burst) + "_t" + std::to_string(t) + "_" + comp + ".csv";
      write_grid(fs::path(dir) / file, f.components[q]);
      sc::write_csv_row(idx, {std::to_string(f.burst), sc::format_double(f.time), comp, file});
    }
  }
  std::cerr << "wrote " << frames.size() << " frames to " << dir << "\n";
  return 0;
}

int cmd_build_dict(const Common& c, const std::string& basis) {
  const Loaded l = load(c);
  const std::string dir = require_dir(c.out, "build-dict");
  const sc::Prepared p = sc::prepare(l.cfg);
  auto dump = [&](const std::string& name, const sc::DictionaryMatrix& A) {
    std::ofstream f(fs::path(dir) / name);
    sc::write_dictionary_csv(f, A);
  };
  if (basis == "legendre" || basis == "both") dump("dictionary_legendre.csv", p.legendre);
  if (basis == "monomial" || basis == "both") dump("dictionary_monomial.csv", p.monomial);
  std::vector<std::string> names;
  for (int e = 0; e < l.cfg.equations(); ++e) names.push_back(sc::component_name(e) + "_t");
  std::ofstream v(fs::path(dir) / "velocity.csv");
  sc::write_velocity_csv(v, p.velocity, names);
  if (p.legendre.normalized()) {
    std::ofstream n(fs::path(dir) / "column_norms.csv");
    sc::write_csv_row(n, p.legendre.column_labels());
    sc::write_grid_csv(n, p.legendre.column_norms.transpose());
  }
  std::cerr << "dictionary " << p.legendre.rows() << " x " << p.legendre.cols() << " written to " << dir << "\n";
  return 0;
}

struct SolveArgs {
  std::string dict, velocity;
  std::optional<double> sigma, gamma, tol;
  std::optional<long> max_iters;
};

int cmd_solve(const Common& c, const SolveArgs& a) {
  sc::ordered_json out = sc::ordered_json::array();
  auto tune = [&](sc::SolverConfig s) {
    if (a.gamma) s.gamma = *a.gamma;
    if (a.tol) s.tol = *a.tol;
    if (a.max_iters) s.max_iters = *a.max_iters;
    return s;
  };
  if (!c.config.empty()) {
    const Loaded l = load(c);
    const sc::Prepared p = sc::prepare(l.cfg);
    const auto labels = p.legendre.column_labels();
    for (int e = 0; e < l.cfg.equations(); ++e) {
      const double sigma = a.sigma ? *a.sigma : l.cfg.sigma_for(e);
      const sc::Solution s = sc::detail::run_stage("solve", [&] {
        return sc::douglas_rachford({p.legendre.entries, p.velocity[e], sigma}, tune(l.cfg.solver));
      });
      auto j = sc::to_json(s, labels);
      j["equation"] = sc::component_name(e);
      j["sigma"] = sigma;
      j["basis"] = "legendre";
      j["monomial"] = sc::labeled_terms(sc::legendre_to_monomial(s.c, p.legendre), p.monomial.column_labels());
      out.push_back(std::move(j));
    }
  } else {
    if (a.dict.empty() || a.velocity.empty() || !a.sigma)
      throw sc::ArgumentError("solve needs --config, or --dict, --velocity and --sigma");
    std::ifstream fa(a.dict), fv(a.velocity);
    if (!fa) throw sc::ArgumentError("cannot open '" + a.dict + "'");
    if (!fv) throw sc::ArgumentError("cannot open '" + a.velocity + "'");
    const auto [labels, A] = sc::read_headed_csv(fa);
    const auto [vnames, V] = sc::read_headed_csv(fv);
    if (V.rows() != A.rows()) throw sc::DimensionError("velocity and dictionary row counts differ");
    for (long e = 0; e < V.cols(); ++e) {
      const sc::Solution s = sc::detail::run_stage(
          "solve", [&] { return sc::douglas_rachford({A, V.col(e), *a.sigma}, tune(sc::SolverConfig{})); });
      auto j = sc::to_json(s, labels);
      j["equation"] = vnames[static_cast<std::size_t>(e)];
      j["sigma"] = *a.sigma;
      out.push_back(std::move(j));
    }
  }
  emit(c.out, out.dump(2) + "\n");
  return 0;
}

struct ExperimentArgs {
  std::optional<bool> debias;
  bool timestamps = false;
  std::string fields_dir;
  std::vector<double> times;
};

int cmd_experiment(const Common& c, const ExperimentArgs& a) {
  Loaded l = load(c);
  apply_debias(l.cfg, a.debias);
  const sc::ExperimentResult r = sc::run_experiment(l.cfg, l.echo);
  emit(c.out, sc::to_json(r, a.timestamps).dump(2) + "\n");
  for (const auto& e : r.equations)
    std::cerr << e.name << ": E_c=" << e.e_c << " E_c(L-BP)=" << e.e_c_lbp << " E_LS=" << e.e_c_ls
              << " E_u=" << e.e_u << " support_exact=" << e.support_exact << " iterations=" << e.iterations << "\n";
  if (r.eu_diverged) std::cerr << "learned system diverged during the E_u evolution\n";
  if (!a.fields_dir.empty()) {
    const auto rep = sc::detail::run_stage("fields", [&] {
      return sc::emit_fields(l.cfg, r.learned, a.times.empty() ? std::vector<double>{0.0} : a.times, a.fields_dir);
    });
    if (rep.diverged) std::cerr << "field output stopped: divergence after t=" << rep.diverged_after << "\n";
  }
  return 0;
}

struct TableArgs {
  int jobs = 1;
  std::optional<bool> debias;
  std::string results_dir;
  bool no_aggregates = false;
};

int cmd_table(const Common& c, const TableArgs& a) {
  const std::string text = sc::read_text(c.config);
  sc::json sweep;
  try {
    sweep = sc::json::parse(text);
  } catch (const sc::json::exception& e) {
    throw sc::ConfigError(std::string("invalid JSON: ") + e.what());
  }
  std::vector<std::uint64_t> seeds;
  if (c.seed) seeds.push_back(*c.seed);
  const auto entries = sc::detail::run_stage("config", [&] { return sc::expand_sweep(sweep, seeds); });
  sc::TableOptions opt;
  opt.jobs = a.jobs;
  opt.result_dir = a.results_dir;
  if (a.debias) {
    opt.debias_override_set = true;
    opt.debias = *a.debias;
  }
  const auto rows = sc::run_table(entries, opt);
  std::ostringstream os;
  sc::write_table_csv(os, rows, !a.no_aggregates);
  emit(c.out, os.str());
  int failed = 0;
  for (const auto& r : rows) failed += r.status.rfind("error", 0) == 0;
  if (failed) std::cerr << failed << " of " << entries.size() << " runs failed; see the status column\n";
  return 0;
}

struct CoherenceArgs {
  std::vector<int> n{100}, p{1};
  int trials = 200;
  std::uint64_t seed = 0;
};

int cmd_coherence(const Common& c, CoherenceArgs a) {
  if (!c.config.empty()) {
    const auto j = sc::json::parse(sc::read_text(c.config));
    sc::detail::reject_unknown(j, {"n", "p", "trials", "seed"}, "coherence config");
    sc::detail::take(j, "n", a.n);
    sc::detail::take(j, "p", a.p);
    sc::detail::take(j, "trials", a.trials);
    sc::detail::take(j, "seed", a.seed);
  }
  if (c.seed) a.seed = *c.seed;
  if (a.n.size() != a.p.size()) throw sc::ArgumentError("--n and --p need the same number of values");
  std::ostringstream os;
  sc::write_csv_row(os, {"n", "p", "trials", "max_offdiag_inner", "max_norm_deviation", "bound", "violations",
                         "mean_column_norm2", "column_norm2_stderr", "failure_probability"});
  for (std::size_t i = 0; i < a.n.size(); ++i) {
    const auto r = sc::detail::run_stage("coherence", [&] { return sc::coherence_study(a.n[i], a.p[i], a.trials, a.seed); });
    sc::write_csv_row(os, {std::to_string(r.n), std::to_string(r.p), std::to_string(r.trials),
                           sc::format_double(r.max_offdiag_inner), sc::format_double(r.max_norm_deviation),
                           sc::format_double(r.bound), std::to_string(r.violations),
                           sc::format_double(r.mean_column_norm2), sc::format_double(r.column_norm2_stderr),
                           sc::format_double(sc::coherence_failure_probability(r.n, r.p))});
  }
  emit(c.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse identification of cyclic dynamical systems"};
  app.require_subcommand(1);

  Common sim, dict, solve, exp, table, coh;
  auto* s_sim = app.add_subcommand("simulate", "Simulate bursts and write snapshot CSVs");
  add_common(s_sim, sim);

  auto* s_dict = app.add_subcommand("build-dict", "Write the localized dictionaries and velocities");
  add_common(s_dict, dict);
  std::string basis = "both";
  s_dict->add_option("--basis", basis, "legendre, monomial or both")
      ->check(CLI::IsMember({"legendre", "monomial", "both"}));

  auto* s_solve = app.add_subcommand("solve", "Solve basis pursuit with Douglas-Rachford");
  add_common(s_solve, solve, false);
  SolveArgs sa;
  s_solve->add_option("--dict", sa.dict, "Dictionary CSV with a header row");
  s_solve->add_option("--velocity", sa.velocity, "Velocity CSV, one column per equation");
  s_solve->add_option("--sigma", sa.sigma, "Noise radius");
  s_solve->add_option("--gamma", sa.gamma, "Prox step (0 = automatic)");
  s_solve->add_option("--tol", sa.tol, "Relative stopping tolerance");
  s_solve->add_option("--max-iters", sa.max_iters, "Iteration cap");

  auto* s_exp = app.add_subcommand("experiment", "Run the full learning pipeline for one config");
  add_common(s_exp, exp);
  ExperimentArgs ea;
  s_exp->add_flag("--debias,!--no-debias", ea.debias, "Least-squares refit on the identified support");
  s_exp->add_flag("--timestamps", ea.timestamps, "Include wall-clock fields in the result");
  s_exp->add_option("--fields-dir", ea.fields_dir, "Write exact/learned/difference field CSVs here");
  s_exp->add_option("--times", ea.times, "Output times for --fields-dir")->delimiter(',');

  auto* s_table = app.add_subcommand("table", "Run a sweep and write a CSV table");
  add_common(s_table, table);
  TableArgs ta;
  s_table->add_option("--jobs", ta.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  s_table->add_flag("--debias,!--no-debias", ta.debias, "Least-squares refit on the identified support");
  s_table->add_option("--results-dir", ta.results_dir, "Write one JSON record per run here");
  s_table->add_flag("--no-aggregates", ta.no_aggregates, "Omit the mean rows");

  auto* s_coh = app.add_subcommand("coherence", "Monte Carlo check of the coherence bounds");
  add_common(s_coh, coh, false);
  CoherenceArgs ca;
  s_coh->add_option("--n", ca.n, "Dimensions")->delimiter(',');
  s_coh->add_option("--p", ca.p, "Degrees, paired with --n")->delimiter(',');
  s_coh->add_option("--trials", ca.trials, "Trials per case")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s_sim) return cmd_simulate(sim);
    if (*s_dict) return cmd_build_dict(dict, basis);
    if (*s_solve) return cmd_solve(solve, sa);
    if (*s_exp) return cmd_experiment(exp, ea);
    if (*s_table) return cmd_table(table, ta);
    if (*s_coh) return cmd_coherence(coh, ca);
  } catch (const sc::StageError& e) {
    std::cerr << "error " << e.what() << "\n";
    return 1;
  } catch (const sc::ConfigError& e) {
    std::cerr << "error [config] " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [io] " << e.what() << "\n";
    return 1;
  }
  return 1;
}
