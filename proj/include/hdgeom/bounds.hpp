#pragma once

// Leading-term evaluations of the dimensionality bounds. Each function returns
// only the computable terms of a one-sided asymptotic statement; the O(1)
// remainders are dropped, so values are formula evaluations and carry no
// finite-n guarantee. Logarithms are natural.

#include <cmath>
#include <optional>

#include "hdgeom/errors.hpp"
#include "hdgeom/measures.hpp"

namespace hdgeom {

struct BoundParams {
  double n = 1;
  double gamma = 0.25;  // s / n
  double delta = 0.5;
  std::optional<double> delta1;
  std::optional<double> r;
};

inline void validate(const BoundParams& p) {
  if (!(p.n >= 1)) throw ArgumentError("bounds: n must be positive");
  if (!(p.gamma > 0.0 && p.gamma < 0.5)) throw ArgumentError("bounds: gamma must lie in (0, 1/2)");
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw ArgumentError("bounds: delta must lie in (0, 1)");
  if (p.delta1 && !(*p.delta1 > 0.0 && *p.delta1 <= p.delta))
    throw ArgumentError("bounds: delta1 must lie in (0, delta]");
  if (p.r && !(*p.r > 0.0 && *p.r < 1.0)) throw ArgumentError("bounds: r must lie in (0, 1)");
}

/// (log 1/delta)(1 - gamma) n + 2 log n.
inline double thm3_log_p_bound(const BoundParams& p) {
  validate(p);
  return -std::log(p.delta) * (1.0 - p.gamma) * p.n + 2.0 * std::log(p.n);
}

/// c_{delta1} = [log (1 - delta1^2)^{-1}](1 - gamma)/2 - (1 - delta1^2)^{-1} delta1^2 (1 - 2 gamma)/2.
inline double c_delta1(double delta1, double gamma) {
  if (!(delta1 > 0.0 && delta1 < 1.0)) throw ArgumentError("c_delta1: delta1 must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma <= 0.5)) throw ArgumentError("c_delta1: gamma must lie in (0, 1/2]");
  const double d2 = delta1 * delta1;
  return -0.5 * std::log1p(-d2) * (1.0 - gamma) - 0.5 * d2 / (1.0 - d2) * (1.0 - 2.0 * gamma);
}

/// Coefficient of n in the refined bound on log(p - s).
inline double thm4_coefficient(const BoundParams& p) {
  validate(p);
  if (!p.delta1) throw ArgumentError("thm4: delta1 is required");
  if (!(p.gamma < 0.5)) throw DomainError("thm4: gamma must be strictly below 1/2");
  return -std::log(p.delta) * (1.0 - p.gamma) - c_delta1(*p.delta1, p.gamma) - p.gamma -
         0.5 * std::log1p(-2.0 * p.gamma);
}

/// [(log 1/delta)(1-gamma) - c_{delta1} - gamma - log(1 - 2 gamma)/2] n + 2 log n.
inline double thm4_log_bound(const BoundParams& p) { return thm4_coefficient(p) * p.n + 2.0 * std::log(p.n); }

/// log[4 / (1 - delta^2)] (n - 1)/2 + (log n)/2. Independent of r.
inline double thm5_threshold(double n, double delta) {
  if (!(n >= 2)) throw ArgumentError("thm5_threshold: n must be at least 2");
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("thm5_threshold: delta must lie in (0, 1)");
  return 0.5 * std::log(4.0 / (1.0 - delta * delta)) * (n - 1.0) + 0.5 * std::log(n);
}

/// Exact finite-n ratio [1 - nu(B_{t2})] / nu(B_{t1}) on G_{n,1} with
/// t1 = (1 - delta^2)^{1/2} / 2 and t2 = (1 - r^2)^{1/2}.
inline double thm5_exact_count_bound(int n, double r, double delta) {
  if (n < 2) throw ArgumentError("thm5_exact_count_bound: n must be at least 2");
  if (!(r > 0.0 && r < 1.0)) throw ArgumentError("thm5_exact_count_bound: r must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("thm5_exact_count_bound: delta must lie in (0, 1)");
  const double t1 = 0.5 * std::sqrt(1.0 - delta * delta);
  const double t2 = std::sqrt(1.0 - r * r);
  const double inner = correlation_ball_volume(n, t1);
  if (!(inner > 0.0)) throw DomainError("thm5_exact_count_bound: ball volume underflows for this n");
  return (1.0 - correlation_ball_volume(n, t2)) / inner;
}

}  // namespace hdgeom
