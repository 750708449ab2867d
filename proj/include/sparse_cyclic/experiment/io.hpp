#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pipeline.hpp"

namespace sparse_cyclic {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Shortest text that parses back to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_quote(cells[i]);
  os << '\n';
}

// One CSV line per matrix row, no header.
inline void write_grid_csv(std::ostream& os, const Mat& m) {
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format_double(m(i, j));
    os << '\n';
  }
}

// Header of column labels, then one line per sample.
inline void write_dictionary_csv(std::ostream& os, const DictionaryMatrix& A) {
  write_csv_row(os, A.column_labels());
  write_grid_csv(os, A.entries);
}

inline void write_velocity_csv(std::ostream& os, const std::vector<Vec>& V, const std::vector<std::string>& names) {
  write_csv_row(os, names);
  const long rows = V.empty() ? 0 : V.front().size();
  for (long i = 0; i < rows; ++i) {
    for (std::size_t e = 0; e < V.size(); ++e) os << (e ? "," : "") << format_double(V[e][i]);
    os << '\n';
  }
}

// Reads a headed numeric CSV as written above.
inline std::pair<std::vector<std::string>, Mat> read_headed_csv(std::istream& is) {
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cell += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        out.push_back(cell);
        cell.clear();
      } else if (ch != '\r') {
        cell += ch;
      }
    }
    out.push_back(cell);
    return out;
  };
  std::string line;
  if (!std::getline(is, line)) throw ArgumentError("empty CSV input");
  const auto header = split(line);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw DimensionError("CSV row " + std::to_string(rows.size() + 1) + " has " + std::to_string(cells.size()) +
                           " cells, header has " + std::to_string(header.size()));
    std::vector<double> r;
    for (const auto& c : cells) {
      try {
        r.push_back(std::stod(c));
      } catch (const std::exception&) {
        throw ArgumentError("non-numeric CSV cell '" + c + "'");
      }
    }
    rows.push_back(std::move(r));
  }
  Mat m(static_cast<long>(rows.size()), static_cast<long>(header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < header.size(); ++j) m(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
  return {header, m};
}

// Nonzero entries as [{term, value}] in column order.
inline ordered_json labeled_terms(const Vec& c, const std::vector<std::string>& labels) {
  ordered_json out = ordered_json::array();
  for (long j = 0; j < c.size(); ++j)
    if (c[j] != 0.0) out.push_back({{"term", labels.at(static_cast<std::size_t>(j))}, {"value", c[j]}});
  return out;
}

inline ordered_json index_list(const std::vector<int>& idx, const std::vector<std::string>& labels) {
  ordered_json out = ordered_json::array();
  for (int j : idx) out.push_back(labels.at(static_cast<std::size_t>(j)));
  return out;
}

// JSON numbers cannot hold NaN; undefined metrics become null.
inline ordered_json number_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

inline ordered_json to_json(const Solution& s, const std::vector<std::string>& labels) {
  ordered_json j;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["residual"] = s.residual;
  j["gamma"] = s.gamma;
  j["coefficients"] = labeled_terms(s.c, labels);
  return j;
}

// Deterministic record; wall-clock fields only when requested.
inline ordered_json to_json(const ExperimentResult& r, bool with_timestamps = false) {
  ordered_json j;
  j["config_echo"] = r.config_echo;
  j["config"] = ordered_json::parse(to_json(r.config).dump());  // with defaults resolved
  j["dictionary"] = {{"rows", r.rows}, {"cols", r.cols}, {"basis", "legendre"}};
  j["eu_diverged"] = r.eu_diverged;
  ordered_json eqs = ordered_json::array();
  for (const auto& e : r.equations) {
    ordered_json q;
    q["equation"] = e.name;
    q["sigma"] = e.sigma;
    q["learned"] = labeled_terms(e.c_learned, r.column_labels);
    q["exact"] = labeled_terms(e.c_exact, r.column_labels);
    q["support"] = index_list(e.support, r.column_labels);
    q["candidates"] = index_list(e.candidates, r.column_labels);
    q["metrics"] = {{"e_c", e.e_c},
                    {"e_c_lbp", e.e_c_lbp},
                    {"e_c_monomial", e.e_c_monomial},
                    {"e_c_ls", e.e_c_ls},
                    {"e_u", number_or_null(e.e_u)},
                    {"support_exact", e.support_exact},
                    {"support_check",
                     {{"matches", e.prop2.matches},
                      {"condition", e.prop2.prop2_condition},
                      {"threshold", number_or_null(e.prop2.threshold)}}}};
    q["solver"] = {{"iterations", e.iterations},
                   {"converged", e.converged},
                   {"residual", e.residual},
                   {"gamma", e.gamma},
                   {"legendre_nonzeros", static_cast<long>((e.c_legendre.array() != 0.0).count())}};
    eqs.push_back(std::move(q));
  }
  j["equations"] = std::move(eqs);
  if (r.config.system == SystemKind::grayscott && r.learned.size() == 2) {
    const GrayScottParams g = grayscott_parameters(r.learned[0], r.learned[1], r.config.spacing());
    j["grayscott_parameters"] = {{"r_u", g.r_u}, {"r_v", g.r_v}, {"f", g.f}, {"k", g.k}};
  }
  if (with_timestamps) j["timestamps"] = {{"started", r.started}, {"finished", r.finished}, {"seconds", r.seconds}};
  return j;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw ArgumentError("write to '" + path + "' failed");
}

inline std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace sparse_cyclic
