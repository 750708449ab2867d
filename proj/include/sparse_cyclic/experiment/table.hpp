#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "io.hpp"

namespace sparse_cyclic {

// One experiment of a sweep: the merged JSON text and its parsed config.
struct SweepEntry {
  std::string echo;
  ExperimentConfig config;
};

// {"base": {...}, "overrides": [{...}, ...], "seeds": [...]}. Each override is
// merge-patched onto the base; every resulting config runs once per seed.
// Without "overrides" the base runs alone; without "seeds" its own seed is used.
inline std::vector<SweepEntry> expand_sweep(const json& sweep, const std::vector<std::uint64_t>& seed_override = {}) {
  if (!sweep.is_object()) throw ConfigError("sweep must be a JSON object");
  detail::reject_unknown(sweep, {"name", "base", "overrides", "seeds"}, "sweep");
  if (!sweep.contains("base")) throw ConfigError("sweep needs a 'base' config");
  std::vector<json> variants;
  if (sweep.contains("overrides")) {
    if (!sweep.at("overrides").is_array()) throw ConfigError("'overrides' must be an array");
    for (const auto& o : sweep.at("overrides")) {
      json merged = sweep.at("base");
      merged.merge_patch(o);
      variants.push_back(std::move(merged));
    }
  } else {
    variants.push_back(sweep.at("base"));
  }
  std::vector<std::uint64_t> seeds = seed_override;
  if (seeds.empty() && sweep.contains("seeds")) {
    try {
      seeds = sweep.at("seeds").get<std::vector<std::uint64_t>>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("'seeds': ") + e.what());
    }
  }
  std::vector<SweepEntry> out;
  for (const auto& v : variants) {
    if (seeds.empty()) {
      out.push_back({v.dump(2), config_from_json(v)});
      continue;
    }
    for (std::uint64_t s : seeds) {
      json withseed = v;
      withseed["seed"] = s;
      out.push_back({withseed.dump(2), config_from_json(withseed)});
    }
  }
  if (out.empty()) throw ConfigError("sweep is empty");
  return out;
}

inline const std::vector<std::string>& table_header() {
  static const std::vector<std::string> h{"config", "system",   "n",       "p",    "s",       "noise",
                                          "seed",   "bursts",   "block",   "rows", "cols",    "equation",
                                          "sigma",  "e_c_lbp",  "e_c",     "e_c_ls", "e_u", "support_exact",
                                          "iterations", "converged", "status"};
  return h;
}

struct TableRow {
  std::size_t entry = 0;  // position in the sweep
  std::string config;
  std::string system;
  int n = 0, p = 0, s = 0, bursts = 0, block = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  long rows = 0, cols = 0;
  std::string equation;
  double sigma = NAN, e_c_lbp = NAN, e_c = NAN, e_c_ls = NAN, e_u = NAN;
  double support_exact = NAN;  // 0/1 per run, fraction in aggregate rows
  double iterations = NAN;
  double converged = NAN;
  std::string status = "ok";
};

namespace detail {

inline TableRow row_skeleton(std::size_t i, const ExperimentConfig& c) {
  TableRow r;
  r.entry = i;
  r.config = c.name;
  r.system = to_string(c.system);
  r.n = c.n;
  r.p = c.degree;
  r.noise = c.noise.kind == NoiseKind::none ? 0.0 : c.noise.level;
  r.seed = c.seed;
  r.bursts = c.bursts;
  r.block = c.block_size;
  return r;
}

inline std::vector<TableRow> rows_for(std::size_t i, const ExperimentConfig& c, const ExperimentResult& res) {
  std::vector<TableRow> out;
  for (const auto& e : res.equations) {
    TableRow r = row_skeleton(i, c);
    r.rows = res.rows;
    r.cols = res.cols;
    r.equation = e.name;
    r.s = static_cast<int>(e.exact_support.size());
    r.sigma = e.sigma;
    r.e_c_lbp = e.e_c_lbp;
    r.e_c = e.e_c;
    r.e_c_ls = e.e_c_ls;
    r.e_u = e.e_u;
    r.support_exact = e.support_exact ? 1.0 : 0.0;
    r.iterations = static_cast<double>(e.iterations);
    r.converged = e.converged ? 1.0 : 0.0;
    if (res.eu_diverged) r.status = "eu_diverged";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

struct TableOptions {
  int jobs = 1;
  std::string result_dir;  // when set, each run writes its own JSON record here
  bool debias_override_set = false;
  bool debias = true;
};

// Runs every entry (up to `jobs` at once) and returns rows in sweep order.
// A failing run yields one row whose status carries the stage diagnostic.
inline std::vector<TableRow> run_table(const std::vector<SweepEntry>& entries, const TableOptions& opt = {}) {
  if (entries.empty()) throw ConfigError("sweep is empty");
  if (!opt.result_dir.empty()) std::filesystem::create_directories(opt.result_dir);
  std::vector<std::vector<TableRow>> slots(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      ExperimentConfig c = entries[i].config;
      if (opt.debias_override_set) c.debias = opt.debias;
      try {
        const ExperimentResult res = run_experiment(c, entries[i].echo);
        slots[i] = detail::rows_for(i, c, res);
        if (!opt.result_dir.empty()) {
          const std::string file = "run" + std::to_string(i) + "_" + (c.name.empty() ? "config" : c.name) + "_seed" +
                                   std::to_string(c.seed) + ".json";
          write_text((std::filesystem::path(opt.result_dir) / file).string(), to_json(res).dump(2) + "\n");
        }
      } catch (const std::exception& e) {
        TableRow r = detail::row_skeleton(i, c);
        r.status = std::string("error: ") + e.what();
        slots[i] = {r};
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(entries.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<TableRow> rows;
  for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
  return rows;
}

// Mean rows per (config name, system, n, p, noise, bursts, block, equation)
// over seeds, in order of first appearance. Failed runs are excluded.
inline std::vector<TableRow> aggregate_rows(const std::vector<TableRow>& rows) {
  std::vector<TableRow> out;
  std::vector<int> counts;
  std::map<std::string, std::size_t> where;
  for (const auto& r : rows) {
    if (r.status.rfind("error", 0) == 0) continue;
    const std::string key = r.config + "|" + r.system + "|" + std::to_string(r.n) + "|" + std::to_string(r.p) + "|" +
                            format_double(r.noise) + "|" + std::to_string(r.bursts) + "|" +
                            std::to_string(r.block) + "|" + r.equation;
    auto it = where.find(key);
    if (it == where.end()) {
      where[key] = out.size();
      TableRow a = r;
      a.status = "mean";
      out.push_back(a);
      counts.push_back(1);
      continue;
    }
    TableRow& a = out[it->second];
    int& k = counts[it->second];
    auto acc = [&](double& dst, double x) { dst = (dst * k + x) / (k + 1); };
    acc(a.e_c_lbp, r.e_c_lbp);
    acc(a.e_c, r.e_c);
    acc(a.e_c_ls, r.e_c_ls);
    acc(a.e_u, r.e_u);
    acc(a.support_exact, r.support_exact);
    acc(a.iterations, r.iterations);
    acc(a.converged, r.converged);
    acc(a.sigma, r.sigma);
    ++k;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].seed = static_cast<std::uint64_t>(counts[i]);
  return out;
}

inline void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows, bool with_aggregates = true) {
  write_csv_row(os, table_header());
  auto num = [](double x) { return std::isnan(x) ? std::string() : format_double(x); };
  auto emit = [&](const TableRow& r, const std::string& seed) {
    write_csv_row(os, {r.config, r.system, std::to_string(r.n), std::to_string(r.p), std::to_string(r.s),
                       format_double(r.noise), seed, std::to_string(r.bursts), std::to_string(r.block),
                       std::to_string(r.rows), std::to_string(r.cols), r.equation, num(r.sigma), num(r.e_c_lbp),
                       num(r.e_c), num(r.e_c_ls), num(r.e_u), num(r.support_exact), num(r.iterations),
                       num(r.converged), r.status});
  };
  for (const auto& r : rows) emit(r, std::to_string(r.seed));
  if (!with_aggregates) return;
  // The seed cell of a mean row holds the number of runs averaged.
  for (const auto& r : aggregate_rows(rows)) emit(r, "n=" + std::to_string(r.seed));
}

}  // namespace sparse_cyclic
