#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "io.hpp"

namespace sparse_cyclic {

struct FieldReport {
  std::vector<double> times_written;
  bool diverged = false;
  double diverged_after = 0.0;  // last time reached before divergence
  std::vector<std::string> files;
};

// Evolves the exact and learned systems side by side from the clean initial
// state of burst 0 with step cfg.eu_dt. At each requested time writes, per
// component c and time index t, exact_<c>_<t>.csv, learned_<c>_<t>.csv and
// diff_<c>_<t>.csv (learned minus exact), plus an index.csv listing times.
// Divergence of either system stops the run; files written so far are kept.
inline FieldReport emit_fields(const ExperimentConfig& cfg, const std::vector<StencilPolynomial>& learned,
                               std::vector<double> times, const std::string& dir) {
  if (times.empty()) throw ArgumentError("no output times");
  std::sort(times.begin(), times.end());
  if (times.front() < 0) throw ArgumentError("output times must be nonnegative");
  if (times.front() > 0 && !(cfg.eu_dt > 0)) throw ArgumentError("eu_dt must be positive");
  std::filesystem::create_directories(dir);
  const StencilSystem model(learned);
  FieldReport rep;

  detail::visit_system(cfg, [&](auto tag, auto init, auto rhs, auto, auto fields, auto) {
    using S = typename decltype(tag)::State;
    S a = detail::initial_state<S>(cfg, 0, init);
    S b = a;
    long step = 0;
    for (std::size_t t = 0; t < times.size(); ++t) {
      const long target = times[t] > 0 ? std::lround(times[t] / cfg.eu_dt) : 0;
      try {
        a = evolve(rhs, std::move(a), cfg.eu_dt, target - step);
        b = evolve(model, std::move(b), cfg.eu_dt, target - step);
      } catch (const DivergenceError&) {
        rep.diverged = true;
        rep.diverged_after = rep.times_written.empty() ? 0.0 : rep.times_written.back();
        return 0;
      }
      step = target;
      const auto fa = fields(a), fb = fields(b);
      for (std::size_t c = 0; c < fa.size(); ++c) {
        const Mat ea = detail::as_grid(fa[c]), eb = detail::as_grid(fb[c]);
        const std::string suffix = component_name(static_cast<int>(c)) + "_" + std::to_string(t) + ".csv";
        for (const auto& [prefix, m] : {std::pair<std::string, Mat>{"exact_", ea}, {"learned_", eb}, {"diff_", eb - ea}}) {
          const std::string path = (std::filesystem::path(dir) / (prefix + suffix)).string();
          std::ofstream f(path);
          if (!f) throw ArgumentError("cannot open '" + path + "' for writing");
          write_grid_csv(f, m);
          rep.files.push_back(path);
        }
      }
      rep.times_written.push_back(times[t]);
    }
    return 0;
  });

  std::ofstream idx(std::filesystem::path(dir) / "index.csv");
  write_csv_row(idx, {"index", "time", "status"});
  for (std::size_t t = 0; t < times.size(); ++t) {
    const bool ok = t < rep.times_written.size();
    write_csv_row(idx, {std::to_string(t), format_double(times[t]), ok ? "written" : "diverged"});
  }
  return rep;
}

}  // namespace sparse_cyclic
