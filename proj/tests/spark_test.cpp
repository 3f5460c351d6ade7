#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hdgeom/spark.hpp"

using namespace hdgeom;

namespace {

Matrix gaussian(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  EllipticalSpec spec;
  spec.p = p;
  return sample_design(spec, n, seed, 0).data;
}

// Reference enumerator written from the definition: visit subsets in order of
// size via std::prev_permutation and use the Gram eigenvalues for sigma_min.
Eigen::Index spark_by_definition(const Matrix& x, double c) {
  const Eigen::Index n = x.rows(), p = x.cols();
  for (Eigen::Index k = 1; k <= p; ++k) {
    std::vector<bool> pick(static_cast<std::size_t>(p), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      double smin = 0.0;
      if (k <= n) {
        Matrix sub(n, k);
        Eigen::Index j = 0;
        for (Eigen::Index i = 0; i < p; ++i)
          if (pick[static_cast<std::size_t>(i)]) sub.col(j++) = x.col(i);
        const Matrix gram = sub.transpose() * sub / static_cast<double>(n);
        Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
        smin = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
      }
      if (smin < c) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return p + 1;
}

}  // namespace

TEST(SparkColumnCount, WorkedValues) {
  EXPECT_EQ(spark_column_count(100, 1000), 29);
  EXPECT_EQ(spark_column_count(100, 5000), 24);
  EXPECT_EQ(spark_column_count(1, 3), 2);
  EXPECT_THROW(spark_column_count(10, 1), ArgumentError);
}

TEST(Thm2, WorkedValues) {
  EXPECT_NEAR(thm2_lower_bound(100, 1000, 2.0), 28.953, 1e-3);
  EXPECT_NEAR(thm2_lower_bound(100, 5000, 2.0), 200.0 / std::log(5000.0), 1e-12);
  EXPECT_NEAR(thm2_lower_bound(100, 5000, 2.0), 23.482, 1e-3);
  EXPECT_EQ(thm2_lower_bound(100, 1000, 0.0), 0.0);
}

TEST(RobustSpark, DuplicateColumns) {
  Matrix x = gaussian(5, 6, 3);
  x.col(4) = x.col(2);
  for (double c : {1e-6, 0.1, 0.3}) EXPECT_EQ(robust_spark_exact(x, c), 2) << c;
}

TEST(RobustSpark, OrthogonalDesignGivesSentinel) {
  const Matrix x = 2.0 * Matrix::Identity(4, 4);
  EXPECT_EQ(robust_spark_exact(x, 0.5), 5);
  // Threshold above every singular value of a single normalized column.
  EXPECT_EQ(robust_spark_exact(x, 1.5), 1);
}

TEST(RobustSpark, NormalizationAppliedOnce) {
  // Columns of norm 3 with n = 9 have normalized norm 1. Applying the factor
  // twice would give 1/3 and flip the answer at c = 0.5.
  const Matrix x = 3.0 * Matrix::Identity(9, 3);
  EXPECT_EQ(robust_spark_exact(x, 0.5), 4);
  EXPECT_EQ(robust_spark_exact(x, 1.01), 1);
}

TEST(RobustSpark, MatchesIndependentEnumerator) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix x = gaussian(5, 8, seed);
    for (double c : {0.05, 0.2, 0.5}) EXPECT_EQ(robust_spark_exact(x, c), spark_by_definition(x, c)) << seed << " " << c;
  }
}

TEST(RobustSpark, NonincreasingInC) {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const Matrix x = gaussian(6, 10, seed);
    Eigen::Index prev = robust_spark_exact(x, 1e-3);
    for (double c = 0.05; c < 1.5; c += 0.05) {
      const Eigen::Index k = robust_spark_exact(x, c);
      EXPECT_LE(k, prev) << seed << " " << c;
      prev = k;
    }
  }
}

TEST(RobustSpark, Errors) {
  EXPECT_THROW(robust_spark_exact(Matrix::Ones(3, 23), 0.1), ResourceError);
  EXPECT_THROW(robust_spark_exact(Matrix::Ones(3, 3), 0.0), ArgumentError);
}

TEST(SampleSubset, DistinctAndInRange) {
  rng::Stream s(5, rng::Purpose::subset, 0, 0);
  for (int t = 0; t < 100; ++t) {
    auto idx = sample_subset(s, 50, 20);
    ASSERT_EQ(idx.size(), 20u);
    std::sort(idx.begin(), idx.end());
    EXPECT_TRUE(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
    EXPECT_GE(idx.front(), 0);
    EXPECT_LT(idx.back(), 50);
  }
}

TEST(SampleSubset, RoughlyUniform) {
  rng::Stream s(6, rng::Purpose::subset, 0, 0);
  std::vector<int> counts(10, 0);
  for (int t = 0; t < 20000; ++t)
    for (auto j : sample_subset(s, 10, 3)) ++counts[static_cast<std::size_t>(j)];
  for (int c : counts) EXPECT_NEAR(c, 6000, 300);
}

TEST(MinSingularOverSubsets, DuplicatePairIsFound) {
  Matrix x = gaussian(10, 4, 8);
  x.col(3) = x.col(0);
  // With p = 4, k = 3 at least one of the four subsets holds both duplicates.
  EXPECT_NEAR(min_singular_over_subsets(x, 3, 200, 1, 0), 0.0, 1e-12);
}

TEST(MinSingularExperiment, EchoesKAndIsDeterministic) {
  SparkConfig cfg;
  cfg.n = 30;
  cfg.p = 200;
  cfg.submatrix_trials = 50;
  cfg.replications = 6;
  cfg.seed = 42;
  const auto a = min_singular_experiment(cfg);
  EXPECT_EQ(a.params["k"], spark_column_count(30, 200));
  EXPECT_EQ(a.name, "min_singular_value");
  cfg.threads = 3;
  const auto b = min_singular_experiment(cfg);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  for (double v : a.per_replicate) EXPECT_GT(v, 0.0);
  cfg.k_override = 201;
  EXPECT_THROW(min_singular_experiment(cfg), ArgumentError);
}
