#pragma once

// Invariant measure of the Grassmann manifold G_{n,s} written in the
// coordinates x_i = sin^2(theta_i) of the principal angles to a fixed
// subspace:
//
//   dnu = K_{n,s} prod_{i<j}|x_i - x_j| prod_i x_i^{alpha-1} (1 - x_i)^{-1/2} dx,
//   alpha = (n - 2s + 1)/2,   K_{n,s} = K~_{n,s} / (2^s s!),
//   K~_{n,s} = prod_{i=0}^{s-1} A_{s-i}^2 A_{n-s-i} / (2 A_{n-i}),   A_j = 2 pi^{j/2} / Gamma(j/2).
//
// Balls under the maximum chordal distance are the boxes [0, delta^2]^s, whose
// mass is delta^{s(n-s)} K_{n,s} I(c) with I the Aomoto integral below and c
// pinned between delta^2/2 and delta^2 (1-delta^2)^{-3/2}/2.
//
// Everything multiplicative is carried in LogValue.

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "hdgeom/errors.hpp"
#include "hdgeom/log_value.hpp"
#include "hdgeom/quadrature.hpp"

namespace hdgeom {

namespace detail {
inline double lgam(double x) { return boost::math::lgamma(x); }
inline constexpr double kLogPi = 1.14472988584940017414;
inline constexpr double kLog2 = 0.69314718055994530942;
}  // namespace detail

struct MeasureParams {
  int n = 2;
  int s = 1;

  double alpha() const { return 0.5 * (n - 2 * s + 1); }
};

inline void validate(const MeasureParams& p) {
  if (p.n < 2) throw ArgumentError("measure: n must be at least 2");
  if (p.s < 1 || p.s >= p.n) throw ArgumentError("measure: need 1 <= s < n");
  if (!(p.alpha() > 0.0)) throw DomainError("measure: alpha = (n - 2s + 1)/2 must be positive");
}

/// log A_j, A_j = 2 pi^{j/2} / Gamma(j/2) the area of the unit sphere S^{j-1}.
inline LogValue sphere_area_log(int j) {
  if (j < 1) throw ArgumentError("sphere_area_log: j must be positive");
  return LogValue::from_log(detail::kLog2 + 0.5 * j * detail::kLogPi - detail::lgam(0.5 * j));
}

namespace detail {
// G_{n,s} and G_{n,n-s} are isometric; the product formula is written for s <= n/2.
inline int reduced_dim(int n, int s) {
  if (s < 1 || n - s < 1) throw ArgumentError("need 1 <= s <= n - 1");
  return 2 * s > n ? n - s : s;
}
}  // namespace detail

inline LogValue k_tilde_log(int n, int s) {
  s = detail::reduced_dim(n, s);
  double acc = 0.0;
  for (int i = 0; i < s; ++i) {
    acc += 2.0 * sphere_area_log(s - i).log_mag() + sphere_area_log(n - s - i).log_mag() - detail::kLog2 -
           sphere_area_log(n - i).log_mag();
  }
  return LogValue::from_log(acc);
}

/// K_{n,s} = K~_{n,s} / (2^s s!).
inline LogValue k_norm_log(int n, int s) {
  const int r = detail::reduced_dim(n, s);
  return LogValue::from_log(k_tilde_log(n, s).log_mag() - r * detail::kLog2 - detail::lgam(r + 1.0));
}

/// Log density of nu at an interior point of (0,1)^s.
inline LogValue nu_density_log(std::span<const double> x, const MeasureParams& params) {
  validate(params);
  if (static_cast<int>(x.size()) != params.s) throw ArgumentError("nu_density_log: point has wrong dimension");
  for (double xi : x)
    if (!(xi > 0.0 && xi < 1.0)) throw DomainError("nu_density_log: coordinates must lie in the open interval (0,1)");
  const double a = params.alpha();
  double acc = k_norm_log(params.n, params.s).log_mag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) return LogValue::zero();
      acc += std::log(std::abs(x[i] - x[j]));
    }
    acc += (a - 1.0) * std::log(x[i]) - 0.5 * std::log1p(-x[i]);
  }
  return LogValue::from_log(acc);
}

/// Closed form of I(c) = int_{[0,1]^s} prod(1 + c y_i) prod_{i<j}|y_i - y_j| prod y_i^{alpha-1} dy
/// via Aomoto's extension of the Selberg integral. The binomial sum over m has
/// only positive terms and is accumulated with log-sum-exp.
inline LogValue aomoto_integral_log(int s, double alpha, double c) {
  if (s < 1) throw ArgumentError("aomoto_integral_log: s must be positive");
  if (!(alpha > 0.0)) throw DomainError("aomoto_integral_log: alpha must be positive");
  if (!(c >= 0.0)) throw ArgumentError("aomoto_integral_log: c must be nonnegative");
  using detail::lgam;

  double base = s * detail::kLog2 - 0.5 * s * detail::kLogPi;
  for (int i = 0; i < s; ++i)
    base += lgam(alpha + 0.5 * i) + lgam(1.0 + 0.5 * (i + 1)) + lgam(1.0 + 0.5 * i) - lgam(alpha + 0.5 * (s + i + 1));

  LogValue sum = LogValue::from_log(0.0);  // m = 0 term
  if (c > 0.0) {
    const double log_c = std::log(c);
    for (int m = 1; m <= s; ++m) {
      double term = lgam(s + 1.0) - lgam(m + 1.0) - lgam(s - m + 1.0) + m * log_c;
      for (int i = s - m; i <= s - 1; ++i) term += std::log(alpha + 0.5 * i) - std::log(alpha + 0.5 * (s + i + 1));
      sum += LogValue::from_log(term);
    }
  }
  return LogValue::from_log(base) * sum;
}

struct LogInterval {
  LogValue lower;
  LogValue upper;
};

/// Certified bracket for nu(B_{delta, d_m}) = nu([0, delta^2]^s).
inline LogInterval ball_volume_bounds_log(int n, int s, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("ball_volume_bounds_log: delta must lie in (0,1)");
  const MeasureParams params{n, s};
  validate(params);
  const double d2 = delta * delta;
  const double c_lo = 0.5 * d2;
  const double c_hi = 0.5 * d2 * std::pow(1.0 - d2, -1.5);
  const LogValue prefix = LogValue::from_log(static_cast<double>(s) * (n - s) * std::log(delta)) * k_norm_log(n, s);
  return {prefix * aomoto_integral_log(s, params.alpha(), c_lo), prefix * aomoto_integral_log(s, params.alpha(), c_hi)};
}

/// Leading large-n terms (log delta) gamma (1 - gamma) n^2 - gamma n log n of
/// log nu(B_{delta, d_m}) with s ~ gamma n. Reported alongside, never mixed with,
/// the exact interval.
inline double ball_volume_log_leading(double n, double gamma, double delta) {
  return std::log(delta) * gamma * (1.0 - gamma) * n * n - gamma * n * std::log(n);
}

/// Largest s accepted by nu_quadrature.
inline constexpr int kQuadratureMaxDim = 3;

/// nu(box) by iterated Gauss-Jacobi quadrature (independent of the closed forms
/// except for the constant K_{n,s}).
inline double nu_quadrature(int n, int s, const std::vector<quad::Interval>& box, int points = 64) {
  if (s > kQuadratureMaxDim) throw ResourceError("nu_quadrature supports s <= 3");
  const MeasureParams params{n, s};
  validate(params);
  if (static_cast<int>(box.size()) != s) throw ArgumentError("nu_quadrature: box has wrong dimension");
  if (points < 64) throw ArgumentError("nu_quadrature: at least 64 nodes per axis");
  const quad::AngleIntegrator integrator(n - 2 * s, points);
  return k_norm_log(n, s).value() * integrator.integrate(box);
}

inline double nu_quadrature(int n, int s, int points = 64) {
  return nu_quadrature(n, s, std::vector<quad::Interval>(static_cast<std::size_t>(std::max(s, 0)), {0.0, 1.0}), points);
}

/// nu(B_{t, d_m}) on G_{n,1}: the regularized incomplete beta I_{t^2}((n-1)/2, 1/2).
inline double correlation_ball_volume(int n, double t) {
  if (n < 2) throw ArgumentError("correlation_ball_volume: n must be at least 2");
  if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("correlation_ball_volume: t must lie in [0,1]");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  return boost::math::ibeta(0.5 * (n - 1), 0.5, t * t);
}

}  // namespace hdgeom
