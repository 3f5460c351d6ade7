#pragma once

// Principal angles between subspaces of R^n and the geodesic, chordal and
// maximum chordal distances on the Grassmann manifold.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hdgeom/errors.hpp"

namespace hdgeom {

/// Below this angle (radians) the cosine route is replaced by the sine route.
inline constexpr double kSmallAngle = 1e-4;
inline constexpr double kOrthonormalTolerance = 1e-10;

/// An s-dimensional subspace of R^n held as an n x s orthonormal basis.
class Subspace {
 public:
  /// Adopts `basis` as-is; its columns must already be orthonormal.
  explicit Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
    if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) throw ArgumentError("subspace needs 1 <= s <= n");
    if (!basis_.allFinite()) throw DomainError("subspace basis has non-finite entries");
    const Eigen::MatrixXd gram = basis_.transpose() * basis_;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim(), dim());
    if ((gram - eye).cwiseAbs().maxCoeff() > kOrthonormalTolerance)
      throw ArgumentError("subspace basis is not orthonormal");
  }

  const Eigen::MatrixXd& basis() const { return basis_; }
  Eigen::Index ambient() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  Eigen::MatrixXd projector() const { return basis_ * basis_.transpose(); }

 private:
  Eigen::MatrixXd basis_;
};

/// Orthonormal basis for the span of the given columns (thin Householder QR).
inline Subspace orthonormalize(const Eigen::MatrixXd& columns) {
  const Eigen::Index n = columns.rows();
  const Eigen::Index s = columns.cols();
  if (s < 1 || s > n) throw ArgumentError("orthonormalize: need 1 <= s <= n columns");
  if (!columns.allFinite()) throw DomainError("orthonormalize: non-finite entries");
  Eigen::MatrixXd scaled = columns;
  for (Eigen::Index j = 0; j < s; ++j) {
    const double norm = scaled.col(j).norm();
    if (norm == 0.0) throw DomainError("orthonormalize: zero column");
    scaled.col(j) /= norm;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  if (!(svd.singularValues()(s - 1) > 1e-10)) throw DomainError("orthonormalize: columns are rank deficient");
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(scaled);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, s);
  return Subspace(std::move(q));
}

/// Angles theta_1 >= ... >= theta_s in [0, pi/2].
struct PrincipalAngleSet {
  std::vector<double> angles;
};

namespace detail {

// Fixed argument order so that f(V1, V2) and f(V2, V1) run identical arithmetic.
inline bool swap_pair(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();  // keep the larger first
  const auto& x = a.basis();
  const auto& y = b.basis();
  return std::lexicographical_compare(y.data(), y.data() + y.size(), x.data(), x.data() + x.size());
}

inline PrincipalAngleSet angles_ordered(const Subspace& big, const Subspace& small) {
  const Eigen::Index s = small.dim();
  const Eigen::MatrixXd cross = big.basis().transpose() * small.basis();
  const Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(cross);
  const Eigen::VectorXd cosines = cos_svd.singularValues();  // descending, length s

  PrincipalAngleSet out;
  out.angles.resize(static_cast<std::size_t>(s));
  bool need_sine = false;
  for (Eigen::Index i = 0; i < s; ++i) {
    const double c = std::clamp(cosines(s - 1 - i), 0.0, 1.0);
    out.angles[static_cast<std::size_t>(i)] = std::acos(c);
    need_sine = need_sine || out.angles[static_cast<std::size_t>(i)] < kSmallAngle;
  }
  if (need_sine) {
    const Eigen::MatrixXd residual = small.basis() - big.basis() * cross;
    const Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(residual);
    const Eigen::VectorXd sines = sin_svd.singularValues();  // descending, length s
    for (Eigen::Index i = 0; i < s; ++i) {
      auto& theta = out.angles[static_cast<std::size_t>(i)];
      if (theta < kSmallAngle) theta = std::asin(std::clamp(sines(i), 0.0, 1.0));
    }
  }
  return out;
}

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw ArgumentError("subspaces live in different ambient dimensions");
}

}  // namespace detail

/// Principal angles between V1 and V2; s = min(dim V1, dim V2) of them.
inline PrincipalAngleSet principal_angles(const Subspace& v1, const Subspace& v2) {
  detail::require_same_ambient(v1, v2);
  return detail::swap_pair(v1, v2) ? detail::angles_ordered(v2, v1) : detail::angles_ordered(v1, v2);
}

enum class Metric { geodesic, chordal, max_chordal };

/// d_g = sqrt(sum theta^2), d_c = sqrt(sum sin^2 theta), d_m = sin theta_1.
inline double distance(const PrincipalAngleSet& a, Metric metric) {
  if (a.angles.empty()) return 0.0;
  double acc = 0.0;
  switch (metric) {
    case Metric::geodesic:
      for (double t : a.angles) acc += t * t;
      return std::sqrt(acc);
    case Metric::chordal:
      for (double t : a.angles) acc += std::sin(t) * std::sin(t);
      return std::sqrt(acc);
    case Metric::max_chordal:
      return std::sin(a.angles.front());
  }
  return 0.0;
}

inline double distance(const Subspace& v1, const Subspace& v2, Metric metric) {
  return distance(principal_angles(v1, v2), metric);
}

struct ProjectionDistances {
  double chordal = 0;      // ||P1 - P2||_F / sqrt(2)
  double max_chordal = 0;  // ||P1 - P2||_2
};

/// Distances computed from projectors instead of angles; needs equal dimensions.
inline ProjectionDistances projection_distances(const Subspace& v1, const Subspace& v2) {
  detail::require_same_ambient(v1, v2);
  if (v1.dim() != v2.dim()) throw ArgumentError("projection_distances needs subspaces of equal dimension");
  const Eigen::MatrixXd diff = v1.projector() - v2.projector();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
  return {diff.norm() / std::numbers::sqrt2, es.eigenvalues().cwiseAbs().maxCoeff()};
}

/// cos(theta) listed from the smallest angle to the largest: (r_s, ..., r_1).
inline std::vector<double> canonical_correlations(const Subspace& v1, const Subspace& v2) {
  const auto a = principal_angles(v1, v2);
  std::vector<double> out;
  out.reserve(a.angles.size());
  for (auto it = a.angles.rbegin(); it != a.angles.rend(); ++it) out.push_back(std::cos(*it));
  return out;
}

}  // namespace hdgeom
