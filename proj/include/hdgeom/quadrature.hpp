#pragma once

// Gauss-Jacobi rules and an iterated tensor quadrature for symmetric
// Vandermonde-weighted integrals on boxes inside [0,1]^s:
//
//   int prod_{i<j} |x_i - x_j| prod_i x_i^{e0} (1 - x_i)^{e1} f(x_i) dx
//
// Endpoint singularities at 0 and 1 are absorbed into Jacobi weights. The
// kinks of |x_i - x_j| are removed by splitting each inner axis at the values
// of the outer coordinates, so each piece has a smooth integrand.

#include <Eigen/Dense>

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "hdgeom/errors.hpp"

namespace hdgeom::quad {

struct Rule {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;
};

/// N-point Gauss-Jacobi rule for the weight (1-u)^a (1+u)^b on [-1, 1]
/// (Golub-Welsch: eigen-decomposition of the Jacobi matrix).
inline Rule gauss_jacobi(int points, double a, double b) {
  if (points < 1) throw ArgumentError("gauss_jacobi: need at least one node");
  if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  const double ab = a + b;
  Eigen::VectorXd diag(points);
  Eigen::VectorXd sub(std::max(points - 1, 1));
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < points; ++k) {
    const double t = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (t * (t + 2.0));
  }
  for (int k = 1; k < points; ++k) {
    const double t = 2.0 * k + ab;
    double beta = 0.0;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }
  const double log_mu0 = (ab + 1.0) * std::log(2.0) + boost::math::lgamma(a + 1.0) + boost::math::lgamma(b + 1.0) -
                         boost::math::lgamma(ab + 2.0);
  Rule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  if (points == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = std::exp(log_mu0);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(points - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw DomainError("gauss_jacobi: eigensolver failed");
  const double mu0 = std::exp(log_mu0);
  for (int k = 0; k < points; ++k) {
    rule.nodes[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    rule.weights[static_cast<std::size_t>(k)] = mu0 * v * v;
  }
  return rule;
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Integrates prod_{i<j}|x_i-x_j| prod_i x_i^{e0}(1-x_i)^{e1} f(x_i) over a box.
class VandermondeIntegrator {
 public:
  VandermondeIntegrator(double e0, double e1, std::function<double(double)> factor, int points = 64)
      : e0_(e0), e1_(e1), factor_(std::move(factor)), points_(points) {
    if (points < 1) throw ArgumentError("quadrature needs at least one node per axis");
    if (!(e0 > -1.0 && e1 > -1.0)) throw DomainError("endpoint exponents must exceed -1 for integrability");
    for (int left = 0; left < 2; ++left)
      for (int right = 0; right < 2; ++right)
        rules_[left][right] = gauss_jacobi(points, right ? e1 : 0.0, left ? e0 : 0.0);
  }

  double integrate(const std::vector<Interval>& box) const {
    if (box.empty()) throw ArgumentError("quadrature over an empty box");
    for (const auto& iv : box)
      if (!(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo <= iv.hi)) throw ArgumentError("box must lie inside [0,1]^s");
    std::vector<double> fixed;
    fixed.reserve(box.size());
    return level(box, fixed);
  }

 private:
  double level(const std::vector<Interval>& box, std::vector<double>& fixed) const {
    const Interval iv = box[fixed.size()];
    std::vector<double> cuts{iv.lo};
    for (double x : fixed)
      if (x > iv.lo && x < iv.hi) cuts.push_back(x);
    cuts.push_back(iv.hi);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
      const double lo = cuts[piece];
      const double hi = cuts[piece + 1];
      if (!(hi > lo)) continue;
      const bool left = lo == 0.0 && e0_ != 0.0;
      const bool right = hi == 1.0 && e1_ != 0.0;
      const Rule& rule = rules_[left][right];
      const double h = 0.5 * (hi - lo);
      double scale = h;
      if (left) scale *= std::pow(h, e0_);
      if (right) scale *= std::pow(h, e1_);

      double sum = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double x = lo + h * (1.0 + rule.nodes[k]);
        double g = factor_(x);
        if (!left && e0_ != 0.0) g *= std::pow(x, e0_);
        if (!right && e1_ != 0.0) g *= std::pow(1.0 - x, e1_);
        for (double y : fixed) g *= std::abs(x - y);
        if (fixed.size() + 1 < box.size()) {
          fixed.push_back(x);
          g *= level(box, fixed);
          fixed.pop_back();
        }
        sum += rule.weights[k] * g;
      }
      total += scale * sum;
    }
    return total;
  }

  double e0_, e1_;
  std::function<double(double)> factor_;
  int points_;
  Rule rules_[2][2];
};

/// Same iterated scheme in angle coordinates x = sin^2(theta): integrates
///   prod_{i<j} |sin^2 t_i - sin^2 t_j| prod_i 2 sin^m(t_i) dt
/// over a box in [0, pi/2]^s with Gauss-Legendre pieces. For integer m >= 0
/// every piece is analytic, so convergence is spectral; this equals the
/// x-coordinate integral with exponents e0 = (m - 1)/2, e1 = -1/2.
class AngleIntegrator {
 public:
  explicit AngleIntegrator(int m, int points = 64) : m_(m), rule_(gauss_jacobi(points, 0.0, 0.0)) {
    if (m < 0) throw DomainError("angle integrator: sine exponent must be nonnegative");
  }

  /// `box` is given in x = sin^2 coordinates and converted to angles here.
  double integrate(const std::vector<Interval>& box) const {
    if (box.empty()) throw ArgumentError("quadrature over an empty box");
    std::vector<Interval> angles;
    for (const auto& iv : box) {
      if (!(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo <= iv.hi)) throw ArgumentError("box must lie inside [0,1]^s");
      angles.push_back({std::asin(std::sqrt(iv.lo)), std::asin(std::sqrt(iv.hi))});
    }
    std::vector<double> fixed;
    return level(angles, fixed);
  }

 private:
  double level(const std::vector<Interval>& box, std::vector<double>& fixed) const {
    const Interval iv = box[fixed.size()];
    std::vector<double> cuts{iv.lo};
    for (double t : fixed)
      if (t > iv.lo && t < iv.hi) cuts.push_back(t);
    cuts.push_back(iv.hi);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
      const double lo = cuts[piece];
      const double hi = cuts[piece + 1];
      if (!(hi > lo)) continue;
      const double h = 0.5 * (hi - lo);
      double sum = 0.0;
      for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
        const double t = lo + h * (1.0 + rule_.nodes[k]);
        const double sn = std::sin(t);
        const double s2 = sn * sn;
        double g = 2.0;
        for (int e = 0; e < m_; ++e) g *= sn;
        for (double u2 : fixed_sin2_) g *= std::abs(s2 - u2);
        if (fixed.size() + 1 < box.size()) {
          fixed.push_back(t);
          fixed_sin2_.push_back(s2);
          g *= level(box, fixed);
          fixed.pop_back();
          fixed_sin2_.pop_back();
        }
        sum += rule_.weights[k] * g;
      }
      total += h * sum;
    }
    return total;
  }

  int m_;
  Rule rule_;
  mutable std::vector<double> fixed_sin2_;
};

}  // namespace hdgeom::quad
