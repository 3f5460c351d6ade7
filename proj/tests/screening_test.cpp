#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hdgeom/screening.hpp"

using namespace hdgeom;

namespace {

Matrix gaussian(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  EllipticalSpec spec;
  spec.p = p;
  return sample_design(spec, n, seed, 0).data;
}

ScreeningModel five_sparse(double noise) {
  ScreeningModel m;
  m.spec.p = 1000;
  m.true_support = {0, 1, 2, 3, 4};
  m.coefficients = {1, 1, 1, 1, 1};
  m.noise_sd = noise;
  return m;
}

}  // namespace

TEST(SisRank, PerfectCorrelationFirst) {
  const Matrix x = gaussian(30, 12, 1);
  const Vector y = x.col(5);
  const auto r = sis_rank(x, y);
  EXPECT_EQ(r.order.front(), 5);
  EXPECT_NEAR(r.abs_corr[5], 1.0, 1e-14);
}

TEST(SisRank, AllZeroCorrelationsGiveIdentity) {
  Matrix x(4, 2);
  x << 1, 1, 1, -1, -1, 1, -1, -1;
  Vector y(4);
  y << 1, -1, -1, 1;
  const auto r = sis_rank(x, y);
  EXPECT_EQ(r.order, (std::vector<Eigen::Index>{0, 1}));
  EXPECT_EQ(r.abs_corr[0], 0.0);
  EXPECT_EQ(r.abs_corr[1], 0.0);
}

TEST(SisRank, DegenerateColumnsLastAndFlagged) {
  Matrix x = gaussian(20, 6, 2);
  x.col(1).setConstant(3.0);
  const auto r = sis_rank(x, Vector(x.col(4) + 0.1 * x.col(0)));
  EXPECT_EQ(r.order.back(), 1);
  EXPECT_EQ(r.degenerate, (std::vector<Eigen::Index>{1}));
  EXPECT_THROW(sis_rank(x, Vector::Ones(20)), ArgumentError);
  EXPECT_THROW(sis_rank(x, Vector::Ones(19)), ArgumentError);
}

TEST(SisRank, InvariantUnderRescalingAndSignFlips) {
  const Matrix x = gaussian(50, 40, 3);
  const Vector y = x.col(3) - 0.5 * x.col(7) + gaussian(50, 1, 4).col(0);
  const auto base = sis_rank(x, y);
  Matrix z = x;
  for (Eigen::Index j = 0; j < z.cols(); ++j) z.col(j) *= (j % 2 ? -1.0 : 1.0) * (1.0 + 0.37 * j);
  EXPECT_EQ(sis_rank(z, y).order, base.order);
}

TEST(SisRank, PermutationOfColumns) {
  const Matrix x = gaussian(30, 25, 5);
  const Vector y = x.col(2) + x.col(9);
  const auto r = sis_rank(x, y);
  std::vector<Eigen::Index> sorted = r.order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Eigen::Index> iota(25);
  std::iota(iota.begin(), iota.end(), Eigen::Index{0});
  EXPECT_EQ(sorted, iota);
  for (std::size_t i = 1; i < r.order.size(); ++i)
    EXPECT_GE(r.abs_corr[r.order[i - 1]], r.abs_corr[r.order[i]]);
}

TEST(ScreeningModel, Validation) {
  auto m = five_sparse(1.0);
  m.true_support = {0, 0, 1, 2, 3};
  EXPECT_THROW(validate(m), ConfigError);
  m = five_sparse(1.0);
  m.coefficients.pop_back();
  EXPECT_THROW(validate(m), ConfigError);
  m = five_sparse(-1.0);
  EXPECT_THROW(validate(m), ConfigError);
  m = five_sparse(1.0);
  m.true_support.back() = 1000;
  EXPECT_THROW(validate(m), ConfigError);
}

TEST(SureScreening, RetainEverything) {
  auto m = five_sparse(1.0);
  m.spec.p = 60;
  EXPECT_EQ(sure_screening_frequency(m, 30, 60, 20, 1), 1.0);
  EXPECT_THROW(sure_screening_frequency(m, 30, 4, 20, 1), ArgumentError);
  EXPECT_THROW(sure_screening_frequency(m, 30, 61, 20, 1), ArgumentError);
}

TEST(SureScreening, EmptySupport) {
  ScreeningModel m;
  m.spec.p = 10;
  EXPECT_EQ(sure_screening_frequency(m, 20, 0, 5, 1), 1.0);
}

TEST(SureScreening, StrongSignalPilotBaseline) {
  // Pilot under seed 11: 97 of 100 replicates keep the support in the top 50.
  const auto r = screening_depth_experiment(five_sparse(0.5), 100, 100, 11);
  EXPECT_GE(frequency_at(r, 50), 0.95);
  EXPECT_GE(frequency_at(r, 99), 0.95);
}

TEST(SureScreening, NoiselessThreeSparse) {
  ScreeningModel m;
  m.spec.p = 1000;
  m.true_support = {10, 500, 999};
  m.coefficients = {1.0, -1.0, 1.0};
  m.noise_sd = 0.0;
  EXPECT_GE(sure_screening_frequency(m, 100, 99, 100, 11), 0.99);
}

TEST(SureScreening, NondecreasingInD) {
  auto m = five_sparse(2.0);
  m.spec.p = 300;
  const auto r = screening_depth_experiment(m, 60, 40, 5);
  double prev = 0.0;
  for (Eigen::Index d = 5; d <= 300; d += 5) {
    const double f = frequency_at(r, d);
    EXPECT_GE(f, prev);
    prev = f;
  }
  EXPECT_EQ(prev, 1.0);
  EXPECT_EQ(sure_screening_frequency(m, 60, 100, 40, 5), frequency_at(r, 100));
}

TEST(SureScreening, ThreadInvariant) {
  auto m = five_sparse(1.0);
  m.spec.p = 200;
  m.spec.family = Family::laplace_iid;
  const auto a = screening_depth_experiment(m, 40, 16, 21, 1);
  const auto b = screening_depth_experiment(m, 40, 16, 21, 4);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(SpuriousCorrelation, NullScale) {
  // One noise column: |corr| is of order 1/sqrt(n).
  const auto r = spurious_max_correlation(1000, 1, 200, 3);
  EXPECT_LT(r.summary.median, 3.0 / std::sqrt(1000.0));
  // Median of |N(0,1)| is 0.674, so the median |corr| is near 0.674 / sqrt(n - 1).
  EXPECT_NEAR(r.summary.median, 0.674 / std::sqrt(999.0), 0.008);
}

TEST(SpuriousCorrelation, GrowsWithNoiseColumns) {
  const auto a = spurious_max_correlation(100, 100, 30, 3);
  const auto b = spurious_max_correlation(100, 10000, 30, 3);
  EXPECT_GT(b.summary.median, a.summary.median);
  for (std::size_t r = 0; r < a.per_replicate.size(); ++r) EXPECT_GE(b.per_replicate[r], a.per_replicate[r]);
}

TEST(SpuriousCorrelation, Errors) {
  EXPECT_THROW(spurious_max_correlation(2, 10, 5, 1), ArgumentError);
  EXPECT_THROW(spurious_max_correlation(10, 0, 5, 1), ArgumentError);
}
