#pragma once

// Robust spark: the smallest column count k for which some n x k submatrix of
// n^{-1/2} X has a singular value below c. Provides the sampled minimum of
// sigma_min over random k-subsets, an exhaustive exact search for small p, and
// the c~ n / log p lower-bound arithmetic.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "hdgeom/detail/replicate_error.hpp"
#include "hdgeom/elliptical.hpp"
#include "hdgeom/parallel.hpp"
#include "hdgeom/report.hpp"
#include "hdgeom/spectra.hpp"

namespace hdgeom {

/// Largest p accepted by robust_spark_exact (2^22 subsets).
inline constexpr Eigen::Index kExhaustiveSparkMaxColumns = 22;

/// Submatrix width ceil(2n / ln p).
inline Eigen::Index spark_column_count(Eigen::Index n, Eigen::Index p) {
  if (p < 2) throw ArgumentError("spark_column_count requires p >= 2");
  if (n < 1) throw ArgumentError("spark_column_count requires n >= 1");
  return static_cast<Eigen::Index>(std::ceil(2.0 * static_cast<double>(n) / std::log(static_cast<double>(p))));
}

/// c~ n / ln p, unfloored.
inline double thm2_lower_bound(Eigen::Index n, Eigen::Index p, double c_tilde) {
  if (p < 2) throw ArgumentError("thm2_lower_bound requires p >= 2");
  return c_tilde * static_cast<double>(n) / std::log(static_cast<double>(p));
}

struct SparkConfig {
  EllipticalSpec spec;  // spec.p is replaced by `p`
  Eigen::Index n = 100;
  Eigen::Index p = 1000;
  std::size_t submatrix_trials = 1000;
  std::size_t replications = 100;
  std::uint64_t seed = 0;
  std::optional<Eigen::Index> k_override;
  unsigned threads = 1;

  Eigen::Index k() const { return k_override ? *k_override : spark_column_count(n, p); }
};

/// Uniform k-subset of [0, p) by a partial Fisher-Yates shuffle.
inline std::vector<Eigen::Index> sample_subset(rng::Stream& stream, Eigen::Index p, Eigen::Index k) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(p));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Eigen::Index>(stream.uniform_index(static_cast<std::uint64_t>(p - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

/// min over `trials` random k-subsets alpha of sigma_min(n^{-1/2} X_alpha).
/// Trial t draws its subset from Stream(seed, subset, replicate, t).
inline double min_singular_over_subsets(const Matrix& x, Eigen::Index k, std::size_t trials, std::uint64_t seed,
                                        std::uint64_t replicate) {
  if (k < 1 || k > x.cols()) throw ArgumentError("submatrix width k must lie in [1, p]");
  if (trials < 1) throw ArgumentError("submatrix_trials must be positive");
  if (k > x.rows()) return 0.0;
  const double scale = 1.0 / std::sqrt(static_cast<double>(x.rows()));
  Matrix sub(x.rows(), k);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    rng::Stream stream(seed, rng::Purpose::subset, replicate, t);
    const auto cols = sample_subset(stream, x.cols(), k);
    for (Eigen::Index j = 0; j < k; ++j) sub.col(j) = x.col(cols[static_cast<std::size_t>(j)]) * scale;
    best = std::min(best, min_singular_value(sub));
  }
  return best;
}

inline Json params_json(const SparkConfig& cfg) {
  Json j{{"family", std::string(to_string(cfg.spec.family))},
         {"n", cfg.n},
         {"p", cfg.p},
         {"k", cfg.k()},
         {"submatrix_trials", cfg.submatrix_trials},
         {"replications", cfg.replications}};
  if (cfg.spec.family == Family::multivariate_t) j["dof"] = cfg.spec.dof;
  return j;
}

/// Per replicate: draw X, then record the sampled minimum of sigma_min.
inline ExperimentReport min_singular_experiment(const SparkConfig& cfg) {
  if (cfg.n < 1 || cfg.p < 1) throw ConfigError("n and p must be positive");
  if (cfg.replications < 1) throw ConfigError("replications must be positive");
  if (cfg.submatrix_trials < 1) throw ConfigError("submatrix_trials must be positive");
  const Eigen::Index k = cfg.k();
  if (k < 1 || k > cfg.p) throw ArgumentError("submatrix width k must lie in [1, p]");
  EllipticalSpec spec = cfg.spec;
  spec.p = cfg.p;
  const EllipticalSampler sampler(spec);
  std::vector<double> minima(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    minima[r] = detail::with_replicate(r, [&] {
      const auto design = sampler.sample(cfg.n, cfg.seed, r);
      return min_singular_over_subsets(design.data, k, cfg.submatrix_trials, cfg.seed, r);
    });
  });
  return make_report("min_singular_value", params_json(cfg), cfg.seed, std::move(minima));
}

/// Exact robust spark by enumerating column subsets in order of size.
///
/// Returns the smallest k such that some k-subset alpha has
/// sigma_min(n^{-1/2} X_alpha) < c, or p + 1 when no subset qualifies.
/// Every visited subset is checked against its parent with the largest column
/// dropped: adding a column may not raise sigma_min.
inline Eigen::Index robust_spark_exact(const Matrix& x, double c) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (n < 1 || p < 1) throw ArgumentError("robust_spark_exact: empty matrix");
  if (p > kExhaustiveSparkMaxColumns) throw ResourceError("robust_spark_exact: p exceeds the exhaustive-search cap of 22");
  if (!(c > 0.0)) throw ArgumentError("robust_spark_exact: c must be positive");
  if (!x.allFinite()) throw DomainError("robust_spark_exact: non-finite entries");

  const Matrix y = x / std::sqrt(static_cast<double>(n));
  const std::uint32_t full = (std::uint32_t{1} << p) - 1;
  std::vector<double> sigma(static_cast<std::size_t>(full) + 1, std::numeric_limits<double>::quiet_NaN());
  Matrix sub;

  for (Eigen::Index k = 1; k <= p; ++k) {
    if (k > n) return k;  // any n x k block with k > n is singular
    sub.resize(n, k);
    // Gosper's hack walks every mask with popcount k in increasing order.
    for (std::uint32_t mask = (std::uint32_t{1} << k) - 1; mask <= full;) {
      Eigen::Index j = 0;
      for (std::uint32_t m = mask; m; m &= m - 1) sub.col(j++) = y.col(std::countr_zero(m));
      const double s = min_singular_value(sub);
      sigma[mask] = s;
      if (k > 1) {
        const std::uint32_t parent = mask & ~(std::uint32_t{1} << (31 - std::countl_zero(mask)));
        if (s > sigma[parent] * (1.0 + 1e-10) + 1e-14)
          throw DomainError("robust_spark_exact: sigma_min increased when a column was added");
      }
      if (s < c) return k;
      if (mask == full) break;
      const std::uint32_t lowest = mask & (~mask + 1);
      const std::uint32_t ripple = mask + lowest;
      if (ripple == 0 || ripple > full) break;
      mask = ripple | (((mask ^ ripple) >> 2) / lowest);
    }
  }
  return p + 1;
}

}  // namespace hdgeom
