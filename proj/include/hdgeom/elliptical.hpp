#pragma once

// Random design matrices: i.i.d. Gaussian entries, i.i.d. Laplace entries, and
// rows from a multivariate t law rescaled to unit marginal variances, each
// optionally correlated through a symmetric covariance square root.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hdgeom/errors.hpp"
#include "hdgeom/parallel.hpp"
#include "hdgeom/rng.hpp"

namespace hdgeom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Family { gaussian_iid, laplace_iid, multivariate_t };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::gaussian_iid: return "gaussian";
    case Family::laplace_iid: return "laplace";
    case Family::multivariate_t: return "t";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  if (name == "gaussian" || name == "gaussian_iid" || name == "normal") return Family::gaussian_iid;
  if (name == "laplace" || name == "laplace_iid") return Family::laplace_iid;
  if (name == "t" || name == "multivariate_t" || name == "mvt") return Family::multivariate_t;
  throw ConfigError("unknown distribution family '" + std::string(name) + "'");
}

struct EllipticalSpec {
  Family family = Family::gaussian_iid;
  Eigen::Index p = 1;
  double dof = 0.0;                   // multivariate_t only
  std::optional<Matrix> covariance;   // nullopt means identity
};

inline constexpr double kLaplaceScale = 0.70710678118654752440;  // 1/sqrt(2): unit variance

/// Column factor sqrt((dof-2)/dof) that brings t_dof marginals to unit variance.
inline double t_rescale_factor(double dof) {
  if (!(dof > 2.0)) throw ConfigError("multivariate_t requires dof > 2");
  return std::sqrt((dof - 2.0) / dof);
}

/// Symmetric square root of an SPD matrix via the spectral decomposition.
inline Matrix covariance_sqrt(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) throw DomainError("covariance must be a non-empty square matrix");
  if (!sigma.allFinite()) throw DomainError("covariance has non-finite entries");
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  if (es.info() != Eigen::Success) throw DomainError("eigendecomposition of covariance failed");
  if (!(es.eigenvalues()(0) > 0.0)) throw DomainError("covariance is not positive definite");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

inline void validate(const EllipticalSpec& spec) {
  if (spec.p < 1) throw ConfigError("dimension p must be positive");
  if (spec.family == Family::multivariate_t) t_rescale_factor(spec.dof);
  if (spec.covariance) {
    if (spec.covariance->rows() != spec.p || spec.covariance->cols() != spec.p)
      throw ConfigError("covariance must be p x p");
    try {
      covariance_sqrt(*spec.covariance);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("invalid covariance: ") + e.what());
    }
  }
}

struct DesignMatrix {
  Matrix data;
  EllipticalSpec spec;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

/// Draws design matrices for a fixed spec; the covariance root is computed once.
class EllipticalSampler {
 public:
  explicit EllipticalSampler(EllipticalSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    if (spec_.covariance) root_ = covariance_sqrt(*spec_.covariance);
    if (spec_.family == Family::multivariate_t) t_factor_ = t_rescale_factor(spec_.dof);
  }

  const EllipticalSpec& spec() const { return spec_; }

  /// Fills `row` (length p) with one spherical draw before the covariance map.
  template <class Row>
  void draw_standard_row(rng::Stream& stream, Row&& row) const {
    const Eigen::Index p = spec_.p;
    switch (spec_.family) {
      case Family::gaussian_iid:
        for (Eigen::Index j = 0; j < p; ++j) row(j) = stream.normal();
        break;
      case Family::laplace_iid:
        for (Eigen::Index j = 0; j < p; ++j) row(j) = stream.laplace(kLaplaceScale);
        break;
      case Family::multivariate_t: {
        // One mixing variable per row, drawn before the Gaussian coordinates.
        const double mix = std::sqrt(stream.chi_squared(spec_.dof) / spec_.dof);
        const double scale = t_factor_ / mix;
        for (Eigen::Index j = 0; j < p; ++j) row(j) = stream.normal() * scale;
        break;
      }
    }
  }

  /// One full row: a spherical draw mapped through the covariance root.
  Vector draw_row(rng::Stream& stream) const {
    Vector row(spec_.p);
    draw_standard_row(stream, row);
    if (root_) return *root_ * row;
    return row;
  }

  /// Row i of replicate r comes from Stream(seed, design, r, i).
  DesignMatrix sample(Eigen::Index n, std::uint64_t seed, std::uint64_t replicate, unsigned threads = 1) const {
    if (n < 1) throw ConfigError("sample size n must be positive");
    Matrix x(n, spec_.p);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
      rng::Stream stream(seed, rng::Purpose::design, replicate, i);
      draw_standard_row(stream, x.row(static_cast<Eigen::Index>(i)));
    });
    if (root_) x = x * (*root_);
    return DesignMatrix{std::move(x), spec_, seed, replicate};
  }

 private:
  EllipticalSpec spec_;
  std::optional<Matrix> root_;
  double t_factor_ = 1.0;
};

inline DesignMatrix sample_design(const EllipticalSpec& spec, Eigen::Index n, std::uint64_t seed,
                                  std::uint64_t replicate) {
  return EllipticalSampler(spec).sample(n, seed, replicate);
}

}  // namespace hdgeom
