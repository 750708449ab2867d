#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sparse_cyclic/dictionary/dictionary.hpp"
#include "sparse_cyclic/dynamics/initial.hpp"
#include "sparse_cyclic/dynamics/systems.hpp"

using namespace sparse_cyclic;

namespace {

Vec row_of(const Mat& m, long i) { return m.row(i).transpose(); }

Vec sorted(Vec v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// Grid with distinct entries u(i,j) = 10 (i+1) + (j+1).
Mat labelled_grid(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = 10.0 * (i + 1) + (j + 1);
  return m;
}

}  // namespace

// Cyclic data matrices -----------------------------------------------------

TEST(CyclicData1D, ThreePointExample) {
  State1D u(3);
  u << 1, 2, 3;
  const Mat M = cyclic_data_1d(u).rows;
  Mat expect(3, 3);
  expect << 1, 2, 3, 2, 3, 1, 3, 1, 2;
  EXPECT_EQ(M, expect);
}

TEST(CyclicData1D, SinglePoint) {
  State1D u(1);
  u << 4.0;
  const Mat M = cyclic_data_1d(u).rows;
  ASSERT_EQ(M.rows(), 1);
  EXPECT_EQ(M(0, 0), 4.0);
}

TEST(CyclicData1D, CirculantAndColumnsArePermutations) {
  Rng rng(1);
  const State1D u = uniform_state(11, rng);
  const Mat M = cyclic_data_1d(u).rows;
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) EXPECT_EQ(M(i, j), u[(i + j) % 11]);
  for (int j = 0; j < 11; ++j) EXPECT_EQ(sorted(M.col(j)), sorted(u));
}

TEST(CyclicData1D, VelocityIndexInvariance) {
  // Permuting the velocity equals evaluating the RHS on permuted states.
  Rng rng(2);
  const State1D u = uniform_state(32, rng);
  const Vec V = cyclic_data_1d(lorenz96_rhs(u, 8.0)).rows.col(0);
  const Mat U = cyclic_data_1d(u).rows;
  for (int i = 0; i < 32; ++i) {
    const double direct = lorenz96_rhs(row_of(U, i), 8.0)[0];
    EXPECT_NEAR(direct, V[i], 1e-12 * std::max(1.0, std::abs(V[i])));
  }
}

TEST(CyclicData2D, ThreeByThreePermutation) {
  const Mat u = labelled_grid(3);
  const Mat M = cyclic_data_2d(State2D(u, 1.0 / 3)).rows;
  // Rows {1,2,3} -> {2,3,1} and columns {1,2,3} -> {3,1,2}: gamma = 1, tau = 2.
  Vec expect(9);
  expect << 23, 21, 22, 33, 31, 32, 13, 11, 12;
  EXPECT_EQ(row_of(M, 1 * 3 + 2), expect);
}

TEST(CyclicData2D, IdentityShiftIsVectorizedGrid) {
  const Mat u = labelled_grid(4);
  const Mat M = cyclic_data_2d(State2D(u, 0.25)).rows;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(M(0, i * 4 + j), u(i, j));
}

TEST(CyclicData2D, AllRowsAreDistinctPermutations) {
  const Mat u = labelled_grid(3);
  const Mat M = cyclic_data_2d(State2D(u, 1.0 / 3)).rows;
  ASSERT_EQ(M.rows(), 9);
  std::set<std::vector<double>> seen;
  const Vec ref = sorted(row_of(M, 0));
  for (int r = 0; r < 9; ++r) {
    const Vec row = row_of(M, r);
    EXPECT_EQ(sorted(row), ref);
    seen.insert(std::vector<double>(row.data(), row.data() + row.size()));
  }
  EXPECT_EQ(seen.size(), 9u);
}

TEST(MulticomponentData, DuplicatedComponentAndShape) {
  const Mat u = labelled_grid(3);
  const TwoComponentState s{State2D(u, 1.0 / 3), State2D(u, 1.0 / 3)};
  const Mat M = multicomponent_data(s).rows;
  ASSERT_EQ(M.rows(), 9);
  ASSERT_EQ(M.cols(), 18);
  EXPECT_EQ(M.leftCols(9), M.rightCols(9));
}

TEST(MulticomponentData, IdentityRowConcatenatesBothGrids) {
  const Mat u = labelled_grid(3);
  const Mat v = -labelled_grid(3);
  const Mat M = multicomponent_data({State2D(u, 1.0 / 3), State2D(v, 1.0 / 3)}).rows;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(M(0, i * 3 + j), u(i, j));
      EXPECT_EQ(M(0, 9 + i * 3 + j), v(i, j));
    }
}

TEST(MulticomponentData, MismatchedGridsRejected) {
  const TwoComponentState s{State2D(Mat::Zero(3, 3), 1.0 / 3), State2D(Mat::Zero(4, 4), 0.25)};
  EXPECT_THROW(multicomponent_data(s), DimensionError);
}

// Localization and restriction ---------------------------------------------

TEST(LocalizeRestrict, NinePointExample) {
  State1D u(9);
  for (int i = 0; i < 9; ++i) u[i] = i + 1;  // u_k = k in 1-based labels
  const auto block = block_indices_1d(9, 2, 5);  // centres u_3 .. u_7
  const Mat R = localize_restrict(cyclic_data_1d(u), 2, block).rows;
  Mat expect(5, 5);
  expect << 3, 4, 5, 1, 2,  //
      4, 5, 6, 2, 3,        //
      5, 6, 7, 3, 4,        //
      6, 7, 8, 4, 5,        //
      7, 8, 9, 5, 6;
  EXPECT_EQ(R, expect);
  EXPECT_EQ(local_data_1d(u, 2, block).rows, expect);
}

TEST(LocalizeRestrict, FullRadiusAndBlockRecoverOriginal) {
  Rng rng(5);
  const State1D u = uniform_state(5, rng);
  const auto full = cyclic_data_1d(u);
  const Mat R = localize_restrict(full, 2, block_indices_1d(5, 0, 5)).rows;
  // Offsets 0,1,2,-2,-1 are columns 0..4 of the circulant matrix.
  EXPECT_EQ(R, full.rows);
}

TEST(LocalizeRestrict, FullRadiusAndBlockRecover2DUpToColumnOrder) {
  Rng rng(6);
  const State2D u(uniform_grid(5, rng), 0.2);
  const auto full = cyclic_data_2d(u);
  std::vector<long> all(25);
  for (long i = 0; i < 25; ++i) all[i] = i;
  const Mat R = localize_restrict(full, 2, all).rows;
  ASSERT_EQ(R.rows(), 25);
  for (long i = 0; i < 25; ++i) EXPECT_EQ(sorted(row_of(R, i)), sorted(row_of(full.rows, i)));
}

TEST(LocalizeRestrict, BurgersBlockShape) {
  Rng rng(7);
  const State2D u(uniform_grid(16, rng), 1.0 / 16);
  const auto d = local_data_2d(u, 2, block_indices_2d(16, 3, 4, 7, 7));
  EXPECT_EQ(d.rows.rows(), 49);
  EXPECT_EQ(d.rows.cols(), 25);
}

TEST(LocalizeRestrict, DirectBuildersMatchFullMatrices) {
  Rng rng(8);
  const State2D u(uniform_grid(9, rng), 1.0 / 9);
  const State2D v(uniform_grid(9, rng), 1.0 / 9);
  // The block crosses the domain boundary so the halo wraps.
  const auto block = block_indices_2d(9, 6, 7, 4, 5);
  EXPECT_EQ(localize_restrict(cyclic_data_2d(u), 2, block).rows, local_data_2d(u, 2, block).rows);
  const TwoComponentState s{u, v};
  EXPECT_EQ(localize_restrict(multicomponent_data(s), 1, block).rows, local_data_2d(s, 1, block).rows);
  const State1D w = uniform_state(9, rng);
  const auto b1 = block_indices_1d(9, 7, 4);
  EXPECT_EQ(localize_restrict(cyclic_data_1d(w), 3, b1).rows, local_data_1d(w, 3, b1).rows);
}

TEST(LocalizeRestrict, RejectsOversizedBlockOrStencil) {
  EXPECT_THROW(block_indices_1d(9, 0, 10), DimensionError);
  EXPECT_THROW(block_indices_2d(5, 0, 0, 6, 2), DimensionError);
  State1D u = State1D::Zero(5);
  std::vector<long> too_many(6, 0);
  EXPECT_THROW(localize_restrict(cyclic_data_1d(u), 1, too_many), DimensionError);
  EXPECT_THROW(local_data_1d(u, 3, {0}), DimensionError);
}

TEST(LocalizeRestrict, CommutesWithMonomialDictionary) {
  // Restricting then building equals building on the full matrix and keeping
  // the stencil-supported monomials on the block rows.
  Rng rng(9);
  const int n = 7, r = 1, p = 3;
  const State1D u = uniform_state(n, rng);
  const auto full = cyclic_data_1d(u);
  const auto block = block_indices_1d(n, 5, 4);
  const auto loc = localize_restrict(full, r, block);
  const auto small = monomial_dictionary(loc, p);
  const auto big = monomial_dictionary(full, p);
  const auto big_lookup = index_lookup(big.columns);
  for (std::size_t j = 0; j < small.columns.size(); ++j) {
    std::vector<int> f;
    for (int v : small.columns[j].factors()) f.push_back(wrap(loc.vars[v].di, n));
    std::sort(f.begin(), f.end());
    const long k = big_lookup.at(f);
    for (std::size_t i = 0; i < block.size(); ++i)
      EXPECT_NEAR(small.entries(static_cast<long>(i), static_cast<long>(j)), big.entries(block[i], k), 1e-15);
  }
}

// Scaling ------------------------------------------------------------------

TEST(Scaling, ZeroToTwo) {
  Mat m(1, 3);
  m << 0, 1, 2;
  const auto s = fit_scaling(m);
  EXPECT_DOUBLE_EQ(s.a, 1.0);
  EXPECT_DOUBLE_EQ(s.b, -1.0);
}

TEST(Scaling, AlreadyUnitInterval) {
  Mat m(2, 2);
  m << -1, 0.5, 1, 0;
  const auto s = fit_scaling(m);
  EXPECT_DOUBLE_EQ(s.a, 1.0);
  EXPECT_DOUBLE_EQ(s.b, 0.0);
}

TEST(Scaling, FiveToFifteen) {
  Mat m(1, 3);
  m << 5, 10, 15;
  const auto s = fit_scaling(m);
  EXPECT_DOUBLE_EQ(s.a, 0.2);
  EXPECT_DOUBLE_EQ(s.b, -2.0);
  EXPECT_DOUBLE_EQ(s(5.0), -1.0);
  EXPECT_DOUBLE_EQ(s(15.0), 1.0);
}

TEST(Scaling, ConstantDataRejected) { EXPECT_THROW(fit_scaling(Mat::Constant(3, 3, 2.0)), ScalingError); }

TEST(Scaling, ComponentScalingFitsEachComponent) {
  Mat u = Mat::Zero(4, 4), v = Mat::Zero(4, 4);
  u(0, 0) = 2.0;
  v(1, 1) = 10.0;
  const auto d = local_data_2d(TwoComponentState{State2D(u, 0.25), State2D(v, 0.25)}, 1, block_indices_2d(4, 0, 0, 4, 4));
  const auto s = component_scaling(d);
  const Mat y = apply_scaling(d.rows, s);
  for (std::size_t j = 0; j < d.vars.size(); ++j) {
    EXPECT_GE(y.col(static_cast<long>(j)).minCoeff(), -1.0 - 1e-15);
    EXPECT_LE(y.col(static_cast<long>(j)).maxCoeff(), 1.0 + 1e-15);
    EXPECT_DOUBLE_EQ(s[j].a, d.vars[j].component == 0 ? 1.0 : 0.2);
  }
}

// Multi-indices and column counts ------------------------------------------

TEST(MultiIndex, ColumnCounts) {
  EXPECT_EQ(enumerate_multi_indices(25, 2).size(), 351u);
  EXPECT_EQ(enumerate_multi_indices(18, 3).size(), 1330u);
  EXPECT_EQ(enumerate_multi_indices(21, 3).size(), 2024u);
  EXPECT_EQ(column_count(24, 3), 2925);
}

TEST(MultiIndex, GradedLexicographicOrder) {
  const auto cols = enumerate_multi_indices(3, 2);
  ASSERT_EQ(cols.size(), 10u);
  EXPECT_EQ(cols[0].degree(), 0);
  EXPECT_EQ(cols[1].factors(), std::vector<int>({0}));
  EXPECT_EQ(cols[3].factors(), std::vector<int>({2}));
  EXPECT_EQ(cols[4].factors(), std::vector<int>({0, 0}));
  EXPECT_EQ(cols[5].factors(), std::vector<int>({0, 1}));
  EXPECT_EQ(cols[9].factors(), std::vector<int>({2, 2}));
  EXPECT_TRUE(std::is_sorted(cols.begin(), cols.end()));
}

TEST(MultiIndex, CapacityGuard) {
  // Quartic in 150 variables has over 22 million columns.
  EXPECT_THROW(enumerate_multi_indices(150, 4), CapacityError);
  EXPECT_THROW(enumerate_multi_indices(10, 3, 100), CapacityError);
}

TEST(MultiIndex, CanonicalLabels) {
  const MultiIndex m = MultiIndex::from_powers({{0, 2}, {1, 1}});
  EXPECT_EQ(m.label({"u[0]", "v[1]"}), "u[0]^2*v[1]");
  EXPECT_EQ(MultiIndex().label({}), "1");
  EXPECT_EQ(m.exponent(0), 2);
  EXPECT_EQ(m.degree(), 3);
}

TEST(MultiIndex, DictionaryLabelsFollowStencilOffsets) {
  const auto d = local_data_2d(State2D(Mat::Identity(5, 5), 0.2), 1, block_indices_2d(5, 0, 0, 2, 2));
  const auto A = monomial_dictionary(d, 2);
  const auto labels = A.column_labels();
  EXPECT_EQ(labels[0], "1");
  EXPECT_EQ(labels[1], "u[0,0]");
  EXPECT_EQ(labels[2], "u[0,1]");
  EXPECT_EQ(labels[10], "u[0,0]^2");
}

// Legendre dictionary ------------------------------------------------------

TEST(Legendre, EndpointValues) {
  EXPECT_NEAR(legendre(1, 1.0), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(legendre(2, 1.0), std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(legendre(3, 1.0), std::sqrt(7.0), 1e-15);
  EXPECT_NEAR(legendre(1, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(legendre(3, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(legendre(2, 0.0), -std::sqrt(5.0) / 2.0, 1e-15);
}

TEST(Legendre, ClosedForms) {
  for (double x : {-0.9, -0.3, 0.2, 0.77}) {
    EXPECT_NEAR(legendre(2, x), std::sqrt(5.0) / 2.0 * (3 * x * x - 1), 1e-14);
    EXPECT_NEAR(legendre(3, x), std::sqrt(7.0) / 2.0 * (5 * x * x * x - 3 * x), 1e-14);
  }
}

TEST(Legendre, MixedTermConstants) {
  Mat X(1, 3);
  X << 0.3, -0.6, 0.8;
  const auto A = legendre_dictionary(X, 3, std::vector<ScalingTransform>(3));
  const auto lookup = index_lookup(A.columns);
  const double x = 0.3, y = -0.6, z = 0.8;
  EXPECT_NEAR(A.entries(0, lookup.at({0, 1})), 3.0 * x * y, 1e-14);
  EXPECT_NEAR(A.entries(0, lookup.at({0, 0, 1})), std::sqrt(15.0) / 2.0 * (3 * x * x - 1) * y, 1e-14);
  EXPECT_NEAR(A.entries(0, lookup.at({0, 1, 2})), std::sqrt(27.0) * x * y * z, 1e-14);
}

TEST(Legendre, EntriesBoundedByThreeToHalfDegree) {
  Rng rng(11);
  Mat X(200, 4);
  for (long i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-1, 1);
  X(0, 0) = 1.0;
  X(1, 1) = -1.0;
  const auto A = legendre_dictionary(X, 3, std::vector<ScalingTransform>(4));
  for (long j = 0; j < A.cols(); ++j) {
    const int p = A.columns[j].degree();
    EXPECT_LE(A.entries.col(j).cwiseAbs().maxCoeff(), std::pow(3.0, p / 2.0) + 1e-12);
  }
}

TEST(Legendre, RejectsDataOutsideUnitInterval) {
  Mat X(1, 1);
  X << 1.5;
  EXPECT_THROW(legendre_dictionary(X, 2, std::vector<ScalingTransform>(1)), ScalingError);
}

TEST(Legendre, SameColumnIndexAsMonomial) {
  Rng rng(12);
  const auto d = local_data_1d(uniform_state(20, rng), 3, block_indices_1d(20, 2, 10));
  const auto M = monomial_dictionary(d, 3);
  const auto L = legendre_dictionary(d, 3, fit_scaling(d));
  EXPECT_EQ(M.columns, L.columns);
  EXPECT_EQ(M.column_labels(), L.column_labels());
}

TEST(Legendre, EmpiricalOrthonormality) {
  Rng rng(13);
  const long rows = 40000;
  Mat X(rows, 4);
  for (long i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-1, 1);
  const auto A = legendre_dictionary(X, 3, std::vector<ScalingTransform>(4));
  const Mat G = A.entries.transpose() * A.entries / static_cast<double>(rows);
  const Mat dev = G - Mat::Identity(G.rows(), G.cols());
  // Entries have variance at most 3^{2p}/rows; 5/sqrt(rows) per unit-variance product, widened by that bound.
  const double tol = 5.0 * 27.0 / std::sqrt(static_cast<double>(rows));
  EXPECT_LE(dev.cwiseAbs().maxCoeff(), tol);
  EXPECT_LE(dev.cwiseAbs().mean(), 5.0 / std::sqrt(static_cast<double>(rows)));
}

// Normalization and stacking -----------------------------------------------

TEST(Normalize, ThreeFourFive) {
  DictionaryMatrix A;
  A.entries = Mat(2, 1);
  A.entries << 3, 4;
  A.columns = {MultiIndex()};
  const auto B = normalize_columns(A);
  EXPECT_NEAR(B.entries(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(B.entries(1, 0), 0.8, 1e-15);
  EXPECT_NEAR(B.column_norms[0], 5.0, 1e-15);
}

TEST(Normalize, UnitColumnsUnchangedAndIdempotent) {
  Rng rng(14);
  Mat X(30, 3);
  for (long i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-1, 1);
  const auto A = normalize_columns(monomial_dictionary(X, 2));
  for (long j = 0; j < A.cols(); ++j) EXPECT_NEAR(A.entries.col(j).norm(), 1.0, 1e-12);
  const auto B = normalize_columns(A);
  EXPECT_LE((B.entries - A.entries).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((B.column_norms - A.column_norms).cwiseAbs().maxCoeff(), 1e-12 * A.column_norms.maxCoeff());
}

TEST(Normalize, ZeroColumnNamesTheMonomial) {
  Mat X = Mat::Zero(4, 2);
  X.col(0).setOnes();
  const auto A = monomial_dictionary(X, 1, {"u[0]", "u[1]"});
  try {
    normalize_columns(A);
    FAIL();
  } catch (const DegenerateColumnError& e) {
    EXPECT_NE(std::string(e.what()).find("u[1]"), std::string::npos);
  }
}

TEST(StackBursts, RowConcatenation) {
  Rng rng(15);
  Mat X1(3, 2), X2(3, 2);
  for (long i = 0; i < 6; ++i) {
    X1.data()[i] = rng.uniform(-1, 1);
    X2.data()[i] = rng.uniform(-1, 1);
  }
  const auto A1 = monomial_dictionary(X1, 2), A2 = monomial_dictionary(X2, 2);
  const Vec v1 = Vec::Constant(3, 1.0), v2 = Vec::Constant(3, 2.0);
  const auto [A, V] = stack_bursts({{A1, v1}, {A2, v2}});
  EXPECT_EQ(A.rows(), 6);
  EXPECT_EQ(A.entries.topRows(3), A1.entries);
  EXPECT_EQ(A.entries.bottomRows(3), A2.entries);
  EXPECT_EQ(V[4], 2.0);
  const auto [S, W] = stack_bursts({{A1, v1}});
  EXPECT_EQ(S.entries, A1.entries);
  EXPECT_THROW(stack_bursts({{A1, v1}, {monomial_dictionary(X2, 1), v2}}), DimensionError);
}

TEST(StackBursts, FourBurgersBurstsGive196Rows) {
  std::vector<CyclicDataMatrix> parts;
  for (int k = 0; k < 4; ++k) {
    Rng rng(100 + k);
    parts.push_back(local_data_2d(State2D(uniform_grid(32, rng), 1.0 / 32), 2, block_indices_2d(32, 5, 5, 7, 7)));
  }
  const auto d = stack_data(parts);
  const auto A = monomial_dictionary(d, 2);
  EXPECT_EQ(A.rows(), 196);
  EXPECT_EQ(A.cols(), 351);
}

// Basis change -------------------------------------------------------------

TEST(BasisChange, ConstantColumn) {
  Mat X(5, 2);
  X << 0, 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const auto L = normalize_columns(legendre_dictionary(X, 2, std::vector<ScalingTransform>(2, fit_scaling(X))));
  Vec cL = Vec::Zero(L.cols());
  cL[0] = 2.0;
  const Vec cm = legendre_to_monomial(cL, L);
  EXPECT_NEAR(cm[0], 2.0 / L.column_norms[0], 1e-14);
  EXPECT_NEAR(cm.tail(cm.size() - 1).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  EXPECT_NEAR(cm[0], (L.entries * cL)[0], 1e-14);
}

TEST(BasisChange, QuadraticLegendreExpansion) {
  Mat X(3, 1);
  X << -1, 0, 1;
  const auto L = legendre_dictionary(X, 2, std::vector<ScalingTransform>(1));
  Vec cL = Vec::Zero(3);
  cL[2] = 1.0;  // columns: 1, x, x^2
  const Vec cm = legendre_to_monomial(cL, L);
  EXPECT_NEAR(cm[2], 3.0 * std::sqrt(5.0) / 2.0, 1e-14);
  EXPECT_NEAR(cm[0], -std::sqrt(5.0) / 2.0, 1e-14);
  EXPECT_NEAR(cm[1], 0.0, 1e-15);
}

TEST(BasisChange, PointwiseRoundTrip) {
  Rng rng(16);
  Mat X(100, 4);
  for (long i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-3.0, 7.0);
  std::vector<ScalingTransform> s;
  for (int v = 0; v < 4; ++v) s.push_back(fit_scaling(Mat(X.col(v))));
  const auto L = normalize_columns(legendre_dictionary(X, 3, s));
  Vec cL(L.cols());
  for (long j = 0; j < cL.size(); ++j) cL[j] = rng.uniform(-1, 1);
  const Vec cm = legendre_to_monomial(cL, L);
  const Vec a = L.entries * cL;
  const Vec b = evaluate_monomials(L.columns, cm, X);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()));
  const Vec back = monomial_to_legendre(cm, L);
  EXPECT_LE((back - cL).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(BasisChange, TriangularInTotalDegree) {
  Rng rng(17);
  Mat X(20, 3);
  for (long i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-1, 1);
  const auto L = legendre_dictionary(X, 3, std::vector<ScalingTransform>(3, ScalingTransform{0.5, 0.1}));
  const Mat T = change_of_basis(L);
  for (long j = 0; j < T.cols(); ++j)
    for (long i = 0; i < T.rows(); ++i)
      if (L.columns[i].degree() > L.columns[j].degree()) EXPECT_EQ(T(i, j), 0.0);
  for (long i = 1; i < T.rows(); ++i)
    for (long j = 0; j < i; ++j) EXPECT_EQ(T(i, j), 0.0);
}

TEST(BasisChange, MissingMetadataRejected) {
  Mat X(3, 2);
  X << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
  auto L = legendre_dictionary(X, 1, std::vector<ScalingTransform>(2));
  L.scaling.clear();
  EXPECT_THROW(legendre_to_monomial(Vec::Ones(L.cols()), L), ArgumentError);
  EXPECT_THROW(legendre_to_monomial(Vec::Ones(2), L), DimensionError);
  EXPECT_THROW(legendre_to_monomial(Vec::Ones(3), monomial_dictionary(X, 1)), ArgumentError);
}
