#pragma once

// Sure independence screening: rank covariates by absolute marginal
// (centered Pearson) correlation with the response and keep the top d.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "hdgeom/detail/replicate_error.hpp"
#include "hdgeom/elliptical.hpp"
#include "hdgeom/parallel.hpp"
#include "hdgeom/report.hpp"

namespace hdgeom {

struct ScreeningRanking {
  std::vector<Eigen::Index> order;       // permutation of [0, p), best first
  std::vector<double> abs_corr;          // by column index; 0 for degenerate columns
  std::vector<Eigen::Index> degenerate;  // zero-variance columns, ranked last
};

namespace detail {

// Centered copy and its norm; a norm below this fraction of the raw norm is treated as zero variance.
inline constexpr double kZeroVarianceTolerance = 1e-12;

inline bool centered(const Eigen::Ref<const Vector>& v, Vector& out, double& norm) {
  out = v.array() - v.mean();
  norm = out.norm();
  return norm > kZeroVarianceTolerance * std::max(1.0, v.norm());
}

}  // namespace detail

/// Columns by |corr(x_j, y)| descending; ties go to the smaller index.
inline ScreeningRanking sis_rank(const Matrix& x, const Vector& y) {
  if (x.rows() != y.size()) throw ArgumentError("sis_rank: X and y disagree on n");
  if (x.rows() < 2) throw ArgumentError("sis_rank: need at least two observations");
  if (!x.allFinite() || !y.allFinite()) throw DomainError("sis_rank: non-finite data");
  Vector yc;
  double y_norm = 0.0;
  if (!detail::centered(y, yc, y_norm)) throw ArgumentError("sis_rank: response has zero variance");

  const Eigen::Index p = x.cols();
  ScreeningRanking out;
  out.abs_corr.assign(static_cast<std::size_t>(p), 0.0);
  std::vector<Eigen::Index> good;
  good.reserve(static_cast<std::size_t>(p));
  Vector xc;
  for (Eigen::Index j = 0; j < p; ++j) {
    double x_norm = 0.0;
    if (!detail::centered(x.col(j), xc, x_norm)) {
      out.degenerate.push_back(j);
      continue;
    }
    out.abs_corr[static_cast<std::size_t>(j)] = std::min(1.0, std::abs(xc.dot(yc)) / (x_norm * y_norm));
    good.push_back(j);
  }
  std::stable_sort(good.begin(), good.end(), [&](Eigen::Index a, Eigen::Index b) {
    return out.abs_corr[static_cast<std::size_t>(a)] > out.abs_corr[static_cast<std::size_t>(b)];
  });
  out.order = std::move(good);
  out.order.insert(out.order.end(), out.degenerate.begin(), out.degenerate.end());
  return out;
}

struct ScreeningModel {
  EllipticalSpec spec;
  std::vector<Eigen::Index> true_support;
  std::vector<double> coefficients;
  double noise_sd = 1.0;
};

inline void validate(const ScreeningModel& m) {
  validate(m.spec);
  if (m.true_support.size() != m.coefficients.size())
    throw ConfigError("screening model: support and coefficients differ in length");
  if (static_cast<Eigen::Index>(m.true_support.size()) >= m.spec.p)
    throw ConfigError("screening model: support must be smaller than p");
  std::vector<Eigen::Index> sorted = m.true_support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("screening model: duplicate support index");
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= m.spec.p))
    throw ConfigError("screening model: support index out of range");
  if (!(m.noise_sd >= 0.0)) throw ConfigError("screening model: noise_sd must be nonnegative");
}

/// Per replicate, 1 + the worst SIS rank of a true covariate: the smallest d
/// that retains the whole support (0 for an empty support).
inline ExperimentReport screening_depth_experiment(const ScreeningModel& model, Eigen::Index n, std::size_t reps,
                                                   std::uint64_t seed, unsigned threads = 1) {
  validate(model);
  if (n < 3) throw ArgumentError("screening needs n >= 3");
  if (reps < 1) throw ArgumentError("screening needs at least one replicate");
  const EllipticalSampler sampler(model.spec);
  std::vector<double> depth(reps, 0.0);
  if (!model.true_support.empty()) {
    parallel_for(reps, threads, [&](std::size_t r) {
      depth[r] = detail::with_replicate(r, [&] {
        const auto design = sampler.sample(n, seed, r);
        rng::Stream noise(seed, rng::Purpose::noise, r, 0);
        Vector y(n);
        for (Eigen::Index i = 0; i < n; ++i) y(i) = model.noise_sd * noise.normal();
        for (std::size_t k = 0; k < model.true_support.size(); ++k)
          y += model.coefficients[k] * design.data.col(model.true_support[k]);
        const auto ranking = sis_rank(design.data, y);
        std::vector<Eigen::Index> position(ranking.order.size());
        for (std::size_t i = 0; i < ranking.order.size(); ++i)
          position[static_cast<std::size_t>(ranking.order[i])] = static_cast<Eigen::Index>(i);
        Eigen::Index worst = 0;
        for (Eigen::Index j : model.true_support) worst = std::max(worst, position[static_cast<std::size_t>(j)]);
        return static_cast<double>(worst + 1);
      });
    });
  }
  Json params{{"family", std::string(to_string(model.spec.family))},
              {"n", n},
              {"p", model.spec.p},
              {"support", model.true_support},
              {"coefficients", model.coefficients},
              {"noise_sd", model.noise_sd},
              {"replications", reps}};
  if (model.spec.family == Family::multivariate_t) params["dof"] = model.spec.dof;
  return make_report("screening_depth", std::move(params), seed, std::move(depth));
}

/// Fraction of replicates whose top-d SIS set contains the support.
inline double frequency_at(const ExperimentReport& depths, Eigen::Index d) {
  std::size_t hits = 0;
  for (double v : depths.per_replicate)
    if (v <= static_cast<double>(d)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(depths.per_replicate.size());
}

inline double sure_screening_frequency(const ScreeningModel& model, Eigen::Index n, Eigen::Index d, std::size_t reps,
                                       std::uint64_t seed, unsigned threads = 1) {
  if (d < static_cast<Eigen::Index>(model.true_support.size()))
    throw ArgumentError("sure_screening_frequency: d must be at least the support size");
  if (d > model.spec.p) throw ArgumentError("sure_screening_frequency: d exceeds p");
  if (model.true_support.empty()) {
    validate(model);
    return 1.0;
  }
  return frequency_at(screening_depth_experiment(model, n, reps, seed, threads), d);
}

/// max_j |corr(x_j, y)| over p_noise independent Gaussian columns, per replicate.
/// Column j of replicate r comes from Stream(seed, design, r, j), so a run with
/// more columns extends, rather than replaces, a run with fewer.
inline ExperimentReport spurious_max_correlation(Eigen::Index n, Eigen::Index p_noise, std::size_t reps,
                                                 std::uint64_t seed, unsigned threads = 1) {
  if (n < 3) throw ArgumentError("spurious_max_correlation: n must be at least 3");
  if (p_noise < 1) throw ArgumentError("spurious_max_correlation: p_noise must be positive");
  if (reps < 1) throw ArgumentError("spurious_max_correlation: reps must be positive");
  std::vector<double> maxima(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    rng::Stream ys(seed, rng::Purpose::response, r, 0);
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = ys.normal();
    Vector yc = y.array() - y.mean();
    const double y_norm = yc.norm();
    Vector x(n);
    double best = 0.0;
    for (Eigen::Index j = 0; j < p_noise; ++j) {
      rng::Stream xs(seed, rng::Purpose::design, r, static_cast<std::uint64_t>(j));
      for (Eigen::Index i = 0; i < n; ++i) x(i) = xs.normal();
      x.array() -= x.mean();
      best = std::max(best, std::abs(x.dot(yc)) / (x.norm() * y_norm));
    }
    maxima[r] = best;
  });
  return make_report("spurious_max_correlation", Json{{"n", n}, {"p_noise", p_noise}, {"replications", reps}}, seed,
                     std::move(maxima));
}

}  // namespace hdgeom
