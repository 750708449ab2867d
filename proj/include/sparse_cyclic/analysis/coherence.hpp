#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "../dictionary/dictionary.hpp"
#include "../dynamics/initial.hpp"

namespace sparse_cyclic {

struct CoherenceReport {
  int n = 0;
  int p = 0;
  double max_offdiag_inner = 0.0;
  double max_norm_deviation = 0.0;
  double bound = 0.0;
  int trials = 0;
  int violations = 0;
  double mean_column_norm2 = 0.0;  // average of ||A_j||^2 over all columns and trials
  double column_norm2_stderr = 0.0;  // across per-trial means
};

inline double coherence_bound(int n, int p) {
  return 12.0 * std::pow(p, 3) * std::pow(3.0, p) * std::sqrt(n * std::log(static_cast<double>(n)));
}

// (e/p + e/(2p^2))^{2p} n^{-2p/11}.
inline double coherence_failure_probability(int n, int p) {
  const double e = std::exp(1.0);
  return std::pow(e / p + e / (2.0 * p * p), 2.0 * p) * std::pow(static_cast<double>(n), -2.0 * p / 11.0);
}

struct SampleComplexity {
  double k_min = 0.0;
  bool single_sample_ok = false;
};

// K >= 144 p^6 9^p s^2 log(n) / n.
inline SampleComplexity sample_complexity(int n, int p, int s) {
  if (n < 2 || p < 1 || s < 1) throw ArgumentError("sample_complexity needs n >= 2, p >= 1, s >= 1");
  SampleComplexity out;
  out.k_min = 144.0 * std::pow(p, 6) * std::pow(9.0, p) * s * s * std::log(static_cast<double>(n)) / n;
  out.single_sample_ok = out.k_min <= 1.0;
  return out;
}

namespace detail {

// Smallest cyclic rotation of a factor list, used as the orbit label.
inline std::vector<int> canonical_rotation(const std::vector<int>& f, int n) {
  std::vector<int> best = f, cur(f.size());
  for (int d = 1; d < n; ++d) {
    for (std::size_t q = 0; q < f.size(); ++q) cur[q] = (f[q] + d) % n;
    std::sort(cur.begin(), cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace detail

// Full (unlocalized) cyclic Legendre dictionary of order p for u in [-1,1]^n.
inline Mat cyclic_legendre_matrix(const State1D& u, int p) {
  const auto data = cyclic_data_1d(u);
  return legendre_dictionary(data.rows, p, std::vector<ScalingTransform>(data.vars.size())).entries;
}

// Column j1 shifted by d equals column j1 with rows rotated, so every inner
// product <A_j1, A_j2> equals one with j1 an orbit representative. Only the
// representative rows of the Gram matrix are formed.
inline CoherenceReport coherence_study(int n, int p, int trials, std::uint64_t seed) {
  if (2 * p * p > n) throw HypothesisError("coherence bound requires 2p^2 <= n");
  if (trials < 1) throw ArgumentError("trials must be positive");
  const auto cols = enumerate_multi_indices(n, p);
  std::vector<int> reps;
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (detail::canonical_rotation(cols[j].factors(), n) == cols[j].factors()) reps.push_back(static_cast<int>(j));

  // Orbit sizes weight the representatives when averaging column norms.
  std::vector<double> orbit(reps.size(), 0.0);
  {
    std::map<std::vector<int>, int> rep_pos;
    for (std::size_t k = 0; k < reps.size(); ++k) rep_pos[cols[reps[k]].factors()] = static_cast<int>(k);
    for (const auto& c : cols) orbit[rep_pos.at(detail::canonical_rotation(c.factors(), n))] += 1.0;
  }

  CoherenceReport rep;
  rep.n = n;
  rep.p = p;
  rep.bound = coherence_bound(n, p);
  rep.trials = trials;
  // Columns of one trial share the same state, so the trial mean is the sample unit.
  const double total_cols = static_cast<double>(cols.size());
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    double trial_sum = 0.0;
    Rng rng(seed, static_cast<std::uint64_t>(t));
    const Mat A = cyclic_legendre_matrix(uniform_state(n, rng), p);
    Mat R(static_cast<long>(reps.size()), A.cols());
    {
      Mat Ar(A.rows(), static_cast<long>(reps.size()));
      for (std::size_t k = 0; k < reps.size(); ++k) Ar.col(static_cast<long>(k)) = A.col(reps[k]);
      R.noalias() = Ar.transpose() * A;
    }
    double off = 0.0, dev = 0.0;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const long jr = reps[k];
      for (long j = 0; j < A.cols(); ++j) {
        const double g = R(static_cast<long>(k), j);
        if (j == jr) {
          dev = std::max(dev, std::abs(g - n));
          trial_sum += orbit[k] * g;
        } else {
          off = std::max(off, std::abs(g));
        }
      }
    }
    rep.max_offdiag_inner = std::max(rep.max_offdiag_inner, off);
    rep.max_norm_deviation = std::max(rep.max_norm_deviation, dev);
    if (off > rep.bound || dev > rep.bound) ++rep.violations;
    const double m = trial_sum / total_cols;
    sum += m;
    sum2 += m * m;
  }
  rep.mean_column_norm2 = sum / trials;
  const double var = trials > 1 ? std::max(0.0, (sum2 - trials * rep.mean_column_norm2 * rep.mean_column_norm2) / (trials - 1)) : 0.0;
  rep.column_norm2_stderr = std::sqrt(var / trials);
  return rep;
}

inline CoherenceReport coherence_trial(int n, int p, std::uint64_t seed) {
  return coherence_study(n, p, 1, seed);
}

// Direct evaluation over all column pairs; for cross-checking small cases.
inline CoherenceReport coherence_trial_bruteforce(int n, int p, std::uint64_t seed) {
  if (2 * p * p > n) throw HypothesisError("coherence bound requires 2p^2 <= n");
  Rng rng(seed, 0);
  const Mat A = cyclic_legendre_matrix(uniform_state(n, rng), p);
  const Mat G = A.transpose() * A;
  CoherenceReport rep;
  rep.n = n;
  rep.p = p;
  rep.bound = coherence_bound(n, p);
  rep.trials = 1;
  for (long i = 0; i < G.rows(); ++i)
    for (long j = 0; j < G.cols(); ++j) {
      if (i == j)
        rep.max_norm_deviation = std::max(rep.max_norm_deviation, std::abs(G(i, i) - n));
      else
        rep.max_offdiag_inner = std::max(rep.max_offdiag_inner, std::abs(G(i, j)));
    }
  rep.mean_column_norm2 = G.diagonal().mean();
  rep.violations = (rep.max_offdiag_inner > rep.bound || rep.max_norm_deviation > rep.bound) ? 1 : 0;
  return rep;
}

}  // namespace sparse_cyclic
