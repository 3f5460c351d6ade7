#pragma once

// Monte Carlo checks of the eigenvalue concentration of p^{-1} X X^T and of
// Euclidean-norm concentration for Gaussian vectors.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "hdgeom/detail/replicate_error.hpp"
#include "hdgeom/elliptical.hpp"
#include "hdgeom/parallel.hpp"
#include "hdgeom/report.hpp"
#include "hdgeom/spectra.hpp"

namespace hdgeom {

struct ConcentrationConfig {
  EllipticalSpec spec;  // spec.p is replaced by the derived column count
  Eigen::Index n = 100;
  double c_ratio = 3.0;
  std::size_t replications = 100;
  double c1 = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  unsigned threads = 1;

  /// Column count p~ = round(c_ratio * n).
  Eigen::Index columns() const { return static_cast<Eigen::Index>(std::llround(c_ratio * static_cast<double>(n))); }
};

inline void validate(const ConcentrationConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("n must be positive");
  if (!(cfg.c_ratio > 1.0)) throw ConfigError("c_ratio must exceed 1");
  if (cfg.replications < 1) throw ConfigError("replications must be positive");
  if (!(cfg.c1 > 1.0)) throw ConfigError("c1 must exceed 1");
}

inline Json params_json(const ConcentrationConfig& cfg) {
  Json j{{"family", std::string(to_string(cfg.spec.family))},
         {"n", cfg.n},
         {"c_ratio", cfg.c_ratio},
         {"p_tilde", cfg.columns()},
         {"replications", cfg.replications}};
  if (cfg.spec.family == Family::multivariate_t) j["dof"] = cfg.spec.dof;
  if (std::isfinite(cfg.c1)) j["c1"] = cfg.c1;
  return j;
}

/// Spectral summary of p~^{-1} X X^T for every replicate, indexed by replicate.
inline std::vector<SpectralSummary> gram_spectra(const ConcentrationConfig& cfg) {
  validate(cfg);
  EllipticalSpec spec = cfg.spec;
  spec.p = cfg.columns();
  const EllipticalSampler sampler(spec);
  std::vector<SpectralSummary> out(cfg.replications);
  parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    out[r] = detail::with_replicate(r, [&] { return gram_extremes(sampler.sample(cfg.n, cfg.seed, r).data); });
  });
  return out;
}

/// Condition number of p~^{-1} X X^T per replicate.
inline ExperimentReport condition_number_experiment(const ConcentrationConfig& cfg) {
  const auto spectra = gram_spectra(cfg);
  std::vector<double> values;
  values.reserve(spectra.size());
  for (const auto& s : spectra) values.push_back(s.condition_number);
  return make_report("condition_number", params_json(cfg), cfg.seed, std::move(values));
}

/// Fraction of replicates with lambda_max > c1 or lambda_min < 1/c1.
inline double deviation_probability(std::span<const SpectralSummary> spectra, double c1) {
  if (spectra.empty()) throw ArgumentError("no replicates");
  std::size_t hits = 0;
  for (const auto& s : spectra)
    if (s.lambda_max > c1 || s.lambda_min < 1.0 / c1) ++hits;
  return static_cast<double>(hits) / static_cast<double>(spectra.size());
}

inline double deviation_probability(const ConcentrationConfig& cfg) {
  validate(cfg);
  if (std::isinf(cfg.c1)) return 0.0;
  return deviation_probability(gram_spectra(cfg), cfg.c1);
}

struct NormCheck {
  double empirical_tail = 0;  // fraction with | ||z|| - mean_est | > r
  double bound = 0;           // 2 exp(-r^2 / 2)
  double mean_lower = 0;      // sqrt(q) E|Z_1| = sqrt(q) sqrt(2/pi)
  double mean_est = 0;
  double mean_upper = 0;      // sqrt(q)
};

/// Empirical norm concentration of a standard Gaussian q-vector.
inline NormCheck norm_concentration_check(Eigen::Index q, double r, std::size_t samples, std::uint64_t seed,
                                          unsigned threads = 1) {
  if (q < 1) throw ArgumentError("q must be positive");
  if (!(r > 0.0)) throw ArgumentError("r must be positive");
  if (samples < 1000) throw ArgumentError("norm_concentration_check needs at least 1000 samples");
  std::vector<double> norms(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    rng::Stream stream(seed, rng::Purpose::reference, 0, i);
    double ss = 0.0;
    for (Eigen::Index j = 0; j < q; ++j) {
      const double z = stream.normal();
      ss += z * z;
    }
    norms[i] = std::sqrt(ss);
  });
  NormCheck out;
  double sum = 0.0;
  for (double v : norms) sum += v;
  out.mean_est = sum / static_cast<double>(samples);
  std::size_t tail = 0;
  for (double v : norms)
    if (std::abs(v - out.mean_est) > r) ++tail;
  out.empirical_tail = static_cast<double>(tail) / static_cast<double>(samples);
  out.bound = 2.0 * std::exp(-0.5 * r * r);
  const double root_q = std::sqrt(static_cast<double>(q));
  out.mean_lower = root_q * std::sqrt(2.0 / std::numbers::pi);
  out.mean_upper = root_q;
  return out;
}

/// Ratios ||z_q|| / ||w|| with z_q a row from `spec` (dimension forced to q)
/// and w an independent standard Gaussian q-vector.
inline ExperimentReport ratio_concentration_check(EllipticalSpec spec, Eigen::Index q, Eigen::Index n,
                                                  std::size_t samples, std::uint64_t seed, unsigned threads = 1) {
  if (n < 1 || q < n) throw ArgumentError("ratio_concentration_check requires q >= n >= 1");
  if (samples < 1) throw ArgumentError("samples must be positive");
  spec.p = q;
  const EllipticalSampler sampler(spec);
  std::vector<double> ratios(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    rng::Stream zs(seed, rng::Purpose::design, 0, i);
    const Vector z = sampler.draw_row(zs);
    rng::Stream ws(seed, rng::Purpose::reference, 0, i);
    double ww = 0.0;
    for (Eigen::Index j = 0; j < q; ++j) {
      const double w = ws.normal();
      ww += w * w;
    }
    ratios[i] = z.norm() / std::sqrt(ww);
  });
  Json params{{"family", std::string(to_string(spec.family))}, {"q", q}, {"n", n}, {"samples", samples}};
  if (spec.family == Family::multivariate_t) params["dof"] = spec.dof;
  return make_report("norm_ratio", std::move(params), seed, std::move(ratios));
}

}  // namespace hdgeom
