#pragma once

#include "mvclass/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>

namespace mvclass {

/// Six-parameter global motion model
///   x' = a x + b y + c
///   y' = d x + e y + f
template <typename Scalar>
struct AffineParams {
  Scalar a{1}, b{0}, c{0};
  Scalar d{0}, e{1}, f{0};

  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

  static AffineParams identity() { return {}; }

  static AffineParams from_rows(const Vector3& x_row, const Vector3& y_row) {
    return {x_row(0), x_row(1), x_row(2), y_row(0), y_row(1), y_row(2)};
  }

  static AffineParams from_matrix(const Matrix3& m) {
    return {m(0, 0), m(0, 1), m(0, 2), m(1, 0), m(1, 1), m(1, 2)};
  }

  Matrix3 matrix() const {
    Matrix3 m;
    m << a, b, c, d, e, f, Scalar(0), Scalar(0), Scalar(1);
    return m;
  }

  Eigen::Matrix<Scalar, 6, 1> vector() const {
    Eigen::Matrix<Scalar, 6, 1> v;
    v << a, b, c, d, e, f;
    return v;
  }

  static AffineParams from_vector(const Eigen::Matrix<Scalar, 6, 1>& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5)};
  }

  bool is_finite() const { return vector().allFinite(); }

  template <typename Other>
  AffineParams<Other> cast() const {
    return {Other(a), Other(b), Other(c), Other(d), Other(e), Other(f)};
  }

  friend bool operator==(const AffineParams&, const AffineParams&) = default;
};

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> apply_gmv(const AffineParams<Scalar>& p, Scalar x, Scalar y) {
  return {p.a * x + p.b * y + p.c, p.d * x + p.e * y + p.f};
}

template <typename Scalar>
struct AffineFit {
  AffineParams<Scalar> params;
  Scalar condition{1};  // 2-norm condition number of the solved normal matrix
  std::size_t samples = 0;
};

// Sum of squared distances between dst and the model applied to src.
// src and dst are N x 2 with one (x, y) point per row.
template <typename DerivedSrc, typename DerivedDst>
typename DerivedSrc::Scalar fitting_residual(
    const AffineParams<typename DerivedSrc::Scalar>& p, const Eigen::MatrixBase<DerivedSrc>& src,
    const Eigen::MatrixBase<DerivedDst>& dst) {
  using Scalar = typename DerivedSrc::Scalar;
  Scalar total{0};
  for (Eigen::Index i = 0; i < src.rows(); ++i) {
    total += (apply_gmv(p, src(i, 0), src(i, 1)) - dst.row(i).transpose()).squaredNorm();
  }
  return total;
}

/// Least-squares affine fit from point correspondences via the normal
/// equations. Coordinates are centred and scaled before solving; the x and y
/// rows are two 3x3 systems sharing one design matrix and are solved together
/// with partial pivoting. Throws RankDeficient when the sample set has fewer
/// than three non-collinear points.
template <typename DerivedSrc, typename DerivedDst>
AffineFit<typename DerivedSrc::Scalar> fit_affine(const Eigen::MatrixBase<DerivedSrc>& src,
                                                  const Eigen::MatrixBase<DerivedDst>& dst) {
  using Scalar = typename DerivedSrc::Scalar;
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
  using MatrixX3 = Eigen::Matrix<Scalar, Eigen::Dynamic, 3>;
  using Matrix32 = Eigen::Matrix<Scalar, 3, 2>;

  const auto n = static_cast<std::size_t>(src.rows());
  if (n < 3 || dst.rows() != src.rows()) {
    throw RankDeficient(n);
  }

  const Eigen::Matrix<Scalar, 1, 2> mean = src.colwise().mean();
  const auto centred = (src.rowwise() - mean).eval();
  Scalar scale = std::sqrt(centred.squaredNorm() / Scalar(n));
  if (!(scale > Scalar(0))) {
    throw RankDeficient(n);
  }

  MatrixX3 design(src.rows(), 3);
  design.template leftCols<2>() = centred / scale;
  design.col(2).setOnes();

  const Matrix3 normal = design.transpose() * design;
  const Matrix32 rhs = design.transpose() * dst;

  const Eigen::SelfAdjointEigenSolver<Matrix3> eig(normal, Eigen::EigenvaluesOnly);
  const Scalar lo = eig.eigenvalues().minCoeff();
  const Scalar hi = eig.eigenvalues().maxCoeff();
  if (!(lo > hi * Eigen::NumTraits<Scalar>::epsilon() * Scalar(1e4))) {
    throw RankDeficient(n);
  }

  const Matrix32 sol = normal.partialPivLu().solve(rhs);

  // Undo the normalisation: u = (x - mean) / scale.
  Matrix3 denorm = Matrix3::Identity();
  denorm(0, 0) = denorm(1, 1) = Scalar(1) / scale;
  denorm(0, 2) = -mean(0) / scale;
  denorm(1, 2) = -mean(1) / scale;
  const Eigen::Matrix<Scalar, 3, 1> x_row = denorm.transpose() * sol.col(0);
  const Eigen::Matrix<Scalar, 3, 1> y_row = denorm.transpose() * sol.col(1);

  return {AffineParams<Scalar>::from_rows(x_row, y_row), hi / lo, n};
}

}  // namespace mvclass
