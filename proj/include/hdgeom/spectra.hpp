#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "hdgeom/errors.hpp"

namespace hdgeom {

/// Eigenvalues within this distance below zero are treated as roundoff and clamped.
inline constexpr double kEigenClampTolerance = 1e-12;

struct SpectralSummary {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition_number = 1.0;  // +inf when lambda_min == 0
};

/// Extreme eigenvalues of the n x n matrix X X^T / p, where p = X.cols().
inline SpectralSummary gram_extremes(const Eigen::MatrixXd& x) {
  if (x.rows() < 1 || x.cols() < 1) throw ArgumentError("gram_extremes: empty matrix");
  if (!x.allFinite()) throw DomainError("gram_extremes: non-finite entries");
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / static_cast<double>(x.cols()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("gram_extremes: eigensolver did not converge");

  double lo = es.eigenvalues()(0);
  double hi = es.eigenvalues()(n - 1);
  if (lo < 0.0) {
    if (lo < -kEigenClampTolerance) throw DomainError("gram_extremes: Gram matrix has a negative eigenvalue");
    lo = 0.0;
  }
  if (hi < 0.0) hi = 0.0;
  SpectralSummary out{lo, hi, std::numeric_limits<double>::infinity()};
  if (lo > 0.0) out.condition_number = hi / lo;
  return out;
}

/// Smallest singular value of an arbitrary matrix, via QR then SVD of the triangle.
inline double min_singular_value(const Eigen::MatrixXd& a) {
  if (a.cols() == 0 || a.rows() == 0) return 0.0;
  if (a.cols() > a.rows()) return 0.0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  return svd.singularValues()(a.cols() - 1);
}

namespace detail {

inline void check_columns(Eigen::Index p, std::span<const Eigen::Index> columns) {
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  for (Eigen::Index c : columns) {
    if (c < 0 || c >= p) throw ArgumentError("column index out of range");
    if (seen[static_cast<std::size_t>(c)]) throw ArgumentError("duplicate column index");
    seen[static_cast<std::size_t>(c)] = true;
  }
}

}  // namespace detail

/// sigma_min of n^{-1/2} X_alpha. Zero whenever k > n (the matrix is rank deficient).
inline double min_singular_of_submatrix(const Eigen::MatrixXd& x, std::span<const Eigen::Index> columns) {
  detail::check_columns(x.cols(), columns);
  const auto k = static_cast<Eigen::Index>(columns.size());
  if (k == 0) throw ArgumentError("empty column set");
  if (k > x.rows()) return 0.0;
  Eigen::MatrixXd sub(x.rows(), k);
  for (Eigen::Index j = 0; j < k; ++j) sub.col(j) = x.col(columns[static_cast<std::size_t>(j)]);
  sub /= std::sqrt(static_cast<double>(x.rows()));
  return min_singular_value(sub);
}

}  // namespace hdgeom
