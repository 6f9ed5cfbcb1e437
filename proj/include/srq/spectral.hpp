#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <utility>

#include "srq/core.hpp"

namespace srq {

/// Relative residual accepted for returned eigenpairs: |M v - lambda v| <= kEigTol * (1 + |M|).
inline constexpr double kEigTol = 1e-12;

struct EigPair {
  double value = 0.0;
  Vector vector;
};

enum class Extreme { min, max };

/// Full symmetric eigendecomposition of (M + M^T)/2.
inline Eigen::SelfAdjointEigenSolver<Matrix> sym_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (m + m.transpose())));
  require(es.info() == Eigen::Success, ErrorCode::convergence_failure,
          "symmetric eigendecomposition did not converge");
  return es;
}

/// Eigenvalues of (M + M^T)/2 in ascending order, no eigenvectors.
inline Vector sym_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (m + m.transpose())),
                                           Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorCode::convergence_failure,
          "symmetric eigenvalue computation did not converge");
  return es.eigenvalues();
}

/// Extreme eigenvalue of a symmetric matrix with a unit eigenvector.
/// For a multiple extreme eigenvalue any unit vector of the eigenspace may be returned.
inline EigPair sym_eig_extreme(const Matrix& m, Extreme which) {
  auto es = sym_eig(m);
  const Index idx = which == Extreme::min ? 0 : es.eigenvalues().size() - 1;
  Vector v = es.eigenvectors().col(idx);
  v /= v.norm();
  return {es.eigenvalues()(idx), std::move(v)};
}

/// L^{-1} m L^{-T} for a Cholesky factor L, symmetrized.
inline Matrix congruence_by_inverse_factor(const Eigen::LLT<Matrix>& llt, const Matrix& m) {
  Matrix half = llt.matrixL().solve(m);
  Matrix full = llt.matrixL().solve(Matrix(half.transpose()));
  return 0.5 * (full + full.transpose());
}

/// Smallest and largest generalized eigenvalues of the pencil (B, W) with W positive
/// definite, computed as the extreme eigenvalues of L^{-1} B L^{-T} where W = L L^T.
inline std::pair<double, double> pencil_extremes(const Matrix& b, const Matrix& w) {
  require(b.rows() == b.cols() && w.rows() == w.cols() && b.rows() == w.rows(),
          ErrorCode::dimension_mismatch, "pencil matrices must be square and equally sized");
  Eigen::LLT<Matrix> llt(Matrix(0.5 * (w + w.transpose())));
  require(llt.info() == Eigen::Success, ErrorCode::not_positive_definite,
          "pencil: W is not positive definite");
  const Vector vals = sym_eigenvalues(congruence_by_inverse_factor(llt, b));
  return {vals(0), vals(vals.size() - 1)};
}

/// Maximum of x^T D x over unit vectors in the numerical null space of a negative
/// semidefinite M. The null space is the span of eigenvectors of M with |eigenvalue|
/// within null_tol of zero; a negative null_tol selects the default 1e-8 * (1 + |M|).
inline EigPair nullspace_max_quadratic(const Matrix& m, const Matrix& d, double null_tol = -1.0) {
  require(m.rows() == d.rows() && m.cols() == d.cols(), ErrorCode::dimension_mismatch,
          "nullspace_max_quadratic: M and D must have equal shapes");
  auto es = sym_eig(m);
  const Vector& vals = es.eigenvalues();
  const Index n = vals.size();
  const double scale = std::max(std::abs(vals(0)), std::abs(vals(n - 1)));
  if (null_tol < 0.0) null_tol = 1e-8 * (1.0 + scale);
  require(vals(n - 1) <= null_tol, ErrorCode::precondition_violation,
          "nullspace_max_quadratic: matrix is not negative semidefinite");
  Index k = 0;
  while (k < n && vals(n - 1 - k) >= -null_tol) ++k;
  require(k > 0, ErrorCode::empty_nullspace,
          "no eigenvalue within tolerance of zero; the null space is empty");
  const Matrix q = es.eigenvectors().rightCols(k);
  auto es2 = sym_eig(Matrix(q.transpose() * d * q));
  Vector x = q * es2.eigenvectors().col(k - 1);
  x /= x.norm();
  return {es2.eigenvalues()(k - 1), std::move(x)};
}

}  // namespace srq
