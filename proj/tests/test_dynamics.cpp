#include <gtest/gtest.h>

#include "sparse_cyclic/dynamics/initial.hpp"
#include "sparse_cyclic/dynamics/integrate.hpp"
#include "sparse_cyclic/dynamics/noise.hpp"
#include "sparse_cyclic/dynamics/systems.hpp"
#include "sparse_cyclic/dynamics/velocity.hpp"

using namespace sparse_cyclic;

namespace {

State1D vec(std::initializer_list<double> v) {
  State1D x(static_cast<long>(v.size()));
  long i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

State2D random_grid(int n, std::uint64_t seed, double h = 0.0) {
  Rng rng(seed);
  return State2D(uniform_grid(n, rng), h > 0 ? h : 1.0 / n);
}

}  // namespace

// Lorenz 96 --------------------------------------------------------------

TEST(Lorenz96, ConstantStateEqualToForcingIsFixedPoint) {
  const State1D u = State1D::Constant(16, 8.0);
  EXPECT_EQ(lorenz96_rhs(u, 8.0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Lorenz96, HandEvaluationOnFourPoints) {
  const State1D u = vec({1, 2, 3, 4});
  const State1D d = lorenz96_rhs(u, 0.0);
  // component j: -u[j-2] u[j-1] + u[j-1] u[j+1] - u[j]
  EXPECT_DOUBLE_EQ(d[0], -3.0 * 4.0 + 4.0 * 2.0 - 1.0);
  EXPECT_DOUBLE_EQ(d[0], -5.0);
  EXPECT_DOUBLE_EQ(d[1], -4.0 * 1.0 + 1.0 * 3.0 - 2.0);
  EXPECT_DOUBLE_EQ(d[2], -1.0 * 2.0 + 2.0 * 4.0 - 3.0);
  EXPECT_DOUBLE_EQ(d[3], -2.0 * 3.0 + 3.0 * 1.0 - 4.0);
}

TEST(Lorenz96, ZeroStateGivesForcing) {
  const State1D d = lorenz96_rhs(State1D::Zero(10), 8.0);
  EXPECT_TRUE(d.isApprox(State1D::Constant(10, 8.0)));
}

TEST(Lorenz96, RejectsFewerThanFourPoints) {
  EXPECT_THROW(lorenz96_rhs(State1D::Zero(3), 8.0), DimensionError);
}

TEST(Lorenz96, CyclicEquivariance) {
  Rng rng(3);
  const State1D u = uniform_state(37, rng);
  for (int s : {1, 5, 36}) {
    const State1D a = lorenz96_rhs(shift(u, s), 8.0);
    const State1D b = shift(lorenz96_rhs(u, 8.0), s);
    EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0) << "shift " << s;
  }
}

// Burgers ------------------------------------------------------------------

TEST(Burgers2D, ConstantGridIsSteady) {
  const State2D u(Mat::Constant(8, 8, 3.5), 1.0 / 8);
  EXPECT_EQ(burgers2d_rhs(u, 1e-2).values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Burgers2D, HotSpotCentreValue) {
  Mat m = Mat::Zero(128, 128);
  m(60, 70) = 1.0;
  const State2D d = burgers2d_rhs(State2D(m, 1.0 / 128), 1e-2);
  EXPECT_NEAR(d.values(60, 70), -655.36, 1e-9);
  // Right neighbour sees alpha/h^2 from diffusion and -1/(4h) from the advective difference.
  EXPECT_NEAR(d.values(59, 70), 1e-2 * 128 * 128 + 128.0 / 4.0, 1e-9);
}

TEST(Burgers2D, LinearFieldHasNoInteriorDiffusion) {
  const int n = 16;
  const double h = 1.0 / n;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = i * h;
  // Away from the wrap rows only ((i+1)^2 - (i-1)^2) h^2 / (4h) = i h remains.
  const State2D d = burgers2d_rhs(State2D(m, h), 1.0);
  for (int i = 1; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) EXPECT_NEAR(d.values(i, j), i * h, 1e-12);
}

TEST(Burgers2D, RejectsNonSquareGrid) {
  EXPECT_THROW(burgers2d_rhs(State2D(Mat::Zero(4, 5), 0.25), 1e-2), DimensionError);
}

TEST(Burgers2D, CyclicEquivariance) {
  const State2D u = random_grid(12, 5);
  for (auto [si, sj] : {std::pair{1, 0}, {0, 3}, {5, 7}}) {
    const State2D a = burgers2d_rhs(shift(u, si, sj), 1e-2);
    const State2D b = shift(burgers2d_rhs(u, 1e-2), si, sj);
    EXPECT_LE((a.values - b.values).cwiseAbs().maxCoeff(), 1e-12 * b.values.cwiseAbs().maxCoeff());
  }
}

// Gray-Scott ---------------------------------------------------------------

TEST(GrayScott, HomogeneousSteadyState) {
  const TwoComponentState s{State2D(Mat::Ones(8, 8), 1.0 / 8), State2D(Mat::Zero(8, 8), 1.0 / 8)};
  const auto d = grayscott_rhs(s, GrayScottParams{});
  EXPECT_EQ(d.u.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(d.v.values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(GrayScott, NinePointLaplacianAnnihilatesConstants) {
  EXPECT_LE(laplacian9(Mat::Constant(9, 9, 2.5), 0.1).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GrayScott, NinePointLaplacianAnnihilatesLinearFieldsInTheInterior) {
  const int n = 10;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = i + 2.0 * j;
  const Mat L = laplacian9(m, 1.0);
  for (int i = 1; i < n - 1; ++i)
    for (int j = 1; j < n - 1; ++j) EXPECT_NEAR(L(i, j), 0.0, 1e-12);
}

TEST(GrayScott, NinePointStencilWeights) {
  Mat m = Mat::Zero(7, 7);
  m(3, 3) = 1.0;
  const Mat L = laplacian9(m, 1.0);
  EXPECT_NEAR(L(3, 3), -10.0 / 3.0, 1e-15);
  EXPECT_NEAR(L(2, 3), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(L(3, 4), 2.0 / 3.0, 1e-15);
  for (auto [i, j] : {std::pair{2, 2}, {2, 4}, {4, 2}, {4, 4}}) EXPECT_NEAR(L(i, j), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(L.sum(), 0.0, 1e-14);
}

TEST(GrayScott, RejectsMismatchedGrids) {
  const TwoComponentState s{State2D(Mat::Ones(8, 8), 1.0 / 8), State2D(Mat::Zero(6, 6), 1.0 / 6)};
  EXPECT_THROW(grayscott_rhs(s, GrayScottParams{}), DimensionError);
}

TEST(GrayScott, CyclicEquivariance) {
  const TwoComponentState s{random_grid(10, 1, 1.0), random_grid(10, 2, 1.0)};
  const auto a = grayscott_rhs(shift(s, 3, 8), GrayScottParams{});
  const auto b = shift(grayscott_rhs(s, GrayScottParams{}), 3, 8);
  EXPECT_LE((a.u.values - b.u.values).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((a.v.values - b.v.values).cwiseAbs().maxCoeff(), 1e-12);
}

// Integration --------------------------------------------------------------

TEST(Integrate, FixedPointIsPreserved) {
  const State1D u = State1D::Constant(8, 8.0);
  const auto b = integrate([](const State1D& x) { return lorenz96_rhs(x, 8.0); }, u, 1e-3, {0.0, 1e-3});
  ASSERT_EQ(b.snapshots.size(), 2u);
  EXPECT_EQ((b.snapshots[1] - u).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Integrate, SingleRecordTimeZeroReturnsInitialState) {
  Rng rng(1);
  const State1D u = uniform_state(8, rng);
  const auto b = integrate([](const State1D& x) { return lorenz96_rhs(x, 8.0); }, u, 1e-3, {0.0});
  ASSERT_EQ(b.snapshots.size(), 1u);
  EXPECT_EQ(b.snapshots[0], u);
}

TEST(Integrate, SingleStepMatchesForwardEuler) {
  Rng rng(2);
  const State1D u = uniform_state(16, rng);
  auto rhs = [](const State1D& x) { return lorenz96_rhs(x, 8.0); };
  const auto b = integrate(rhs, u, 0.01, {0.0, 0.01});
  const State1D expect = u + 0.01 * rhs(u);
  EXPECT_EQ(b.snapshots[1], expect);
}

TEST(Integrate, Lorenz96BurstTakes200Steps) {
  Rng rng(4);
  const State1D u = uniform_state(128, rng);
  long calls = 0;
  auto rhs = [&](const State1D& x) {
    ++calls;
    return lorenz96_rhs(x, 8.0);
  };
  const auto b = integrate(rhs, u, 5e-5, {0.0, 1e-2});
  EXPECT_EQ(calls, 200);
  EXPECT_EQ(b.snapshots.size(), 2u);
  EXPECT_DOUBLE_EQ(b.dt_record(), 1e-2);
}

TEST(Integrate, RejectsRecordTimesOffTheGrid) {
  auto rhs = [](const State1D& x) { return lorenz96_rhs(x, 8.0); };
  EXPECT_THROW(integrate(rhs, State1D(State1D::Zero(8)), 1e-3, {0.0, 1.5e-3}), ArgumentError);
  EXPECT_THROW(integrate(rhs, State1D(State1D::Zero(8)), 1e-3, {1e-3, 1e-3}), ArgumentError);
  EXPECT_THROW(integrate(rhs, State1D(State1D::Zero(8)), 0.0, {0.0}), ArgumentError);
}

TEST(Integrate, DivergenceReportsStep) {
  auto blowup = [](const State1D& x) { State1D d = x.array().square(); return d; };
  try {
    integrate(blowup, State1D(State1D::Constant(4, 10.0)), 1.0, {0.0, 100.0});
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_GT(e.step, 0);
    EXPECT_LT(e.step, 100);
  }
}

// Noise ------------------------------------------------------------------

namespace {
Burst<State2D> grid_burst(int n) {
  Burst<State2D> b;
  b.snapshots = {random_grid(n, 10), random_grid(n, 11)};
  b.times = {0.0, 1e-3};
  return b;
}
}  // namespace

TEST(Noise, NoneIsIdentity) {
  const auto b = grid_burst(16);
  const auto c = add_noise(b, NoiseSpec{NoiseKind::none, 0.0, 1}, 0);
  EXPECT_EQ(c.snapshots[0].values, b.snapshots[0].values);
  EXPECT_EQ(c.snapshots[1].values, b.snapshots[1].values);
}

TEST(Noise, NoneWithNonzeroLevelIsRejected) {
  EXPECT_THROW(validate(NoiseSpec{NoiseKind::none, 0.1, 1}), ArgumentError);
  EXPECT_THROW(validate(NoiseSpec{NoiseKind::gaussian, -1.0, 1}), ArgumentError);
}

TEST(Noise, ZeroVarianceIsIdentity) {
  const auto b = grid_burst(16);
  const auto c = add_noise(b, NoiseSpec{NoiseKind::gaussian, 0.0, 1}, 0);
  EXPECT_EQ(c.snapshots[1].values, b.snapshots[1].values);
}

TEST(Noise, GaussianMeanAndVariance) {
  const int n = 128;
  const auto b = grid_burst(n);
  const double var = 0.002;
  const auto c = add_noise(b, NoiseSpec{NoiseKind::gaussian, var, 42}, 0);
  const Mat eta = c.snapshots[0].values - b.snapshots[0].values;
  const double N = n * n;
  const double mean = eta.mean();
  EXPECT_LE(std::abs(mean), 5.0 * std::sqrt(var) / std::sqrt(N));
  const double sample_var = (eta.array() - mean).square().sum() / (N - 1);
  // Variance of the sample variance is about 2 var^2 / N.
  EXPECT_NEAR(sample_var, var, 5.0 * std::sqrt(2.0 / N) * var);
}

TEST(Noise, UniformStaysWithinHalfWidth) {
  const auto b = grid_burst(32);
  const auto c = add_noise(b, NoiseSpec{NoiseKind::uniform, 0.01, 3}, 0);
  const Mat eta = c.snapshots[1].values - b.snapshots[1].values;
  EXPECT_LE(eta.cwiseAbs().maxCoeff(), 0.01 + 1e-15);
  EXPECT_GT(eta.cwiseAbs().maxCoeff(), 0.009);
}

TEST(Noise, EqualSeedsAreBitReproducible) {
  const auto b = grid_burst(16);
  const NoiseSpec spec{NoiseKind::gaussian, 0.5, 9};
  const auto x = add_noise(b, spec, 4), y = add_noise(b, spec, 4);
  EXPECT_EQ(x.snapshots[0].values, y.snapshots[0].values);
  EXPECT_EQ(x.snapshots[1].values, y.snapshots[1].values);
  const auto z = add_noise(b, spec, 5);
  EXPECT_NE(x.snapshots[0].values, z.snapshots[0].values);
}

TEST(Noise, SharedModeReusesOneDrawAcrossSnapshots) {
  const auto b = grid_burst(16);
  const auto c = add_noise(b, NoiseSpec{NoiseKind::gaussian, 0.1, 2, NoiseMode::shared}, 0);
  const Mat e0 = c.snapshots[0].values - b.snapshots[0].values;
  const Mat e1 = c.snapshots[1].values - b.snapshots[1].values;
  EXPECT_LE((e0 - e1).cwiseAbs().maxCoeff(), 1e-14);
}

// Velocity -----------------------------------------------------------------

TEST(Velocity, ForwardDifference) {
  Burst<State1D> b;
  b.snapshots = {State1D::Constant(3, 1.0), State1D::Constant(3, 1.1)};
  b.times = {0.0, 0.1};
  const auto v = approximate_velocity(b);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NEAR(v[0][0], 1.0, 1e-12);
}

TEST(Velocity, IdenticalSnapshotsGiveZero) {
  Burst<State1D> b;
  b.snapshots = {State1D::Constant(3, 2.0), State1D::Constant(3, 2.0)};
  b.times = {0.0, 0.5};
  EXPECT_EQ(approximate_velocity(b)[0].cwiseAbs().maxCoeff(), 0.0);
}

TEST(Velocity, NeedsTwoSnapshots) {
  Burst<State1D> b;
  b.snapshots = {State1D::Zero(3)};
  b.times = {0.0};
  EXPECT_THROW(approximate_velocity(b), InsufficientDataError);
}

TEST(Velocity, Lorenz96ForwardDifferenceIsFirstOrderAccurate) {
  Rng rng(8);
  const State1D u = uniform_state(128, rng);
  auto rhs = [](const State1D& x) { return lorenz96_rhs(x, 8.0); };
  const auto b = integrate(rhs, u, 5e-5, {0.0, 1e-2});
  const State1D err = approximate_velocity(b)[0] - rhs(u);
  // Second derivative of Lorenz 96 on [-1,1] data is O(10^2); error ~ dt/2 * |u''|.
  EXPECT_LE(err.cwiseAbs().maxCoeff(), 1e-2 * 100.0);
  const auto b2 = integrate(rhs, u, 5e-5, {0.0, 5e-3});
  const State1D err2 = approximate_velocity(b2)[0] - rhs(u);
  EXPECT_NEAR(err.norm() / err2.norm(), 2.0, 0.2);
}
