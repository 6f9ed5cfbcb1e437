#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "srq/core.hpp"
#include "srq/spectral.hpp"

namespace srq {

/// A problem instance max_x x^T B x / x^T W x + x^T D x / x^T V x with W, V positive
/// definite. All four matrices are symmetric n x n.
struct SrqInstance {
  Index n = 0;
  Matrix B, W, D, V;
};

/// The instance after the congruence that turns V into the identity, together with the
/// cached spectral constants the solver needs. Objective values on the unit sphere equal
/// objective values of the original instance under the stored back-substitution factor.
struct SphereContext {
  Index n = 0;
  Matrix B, W, D;
  double lam_min_w = 0.0, lam_max_w = 0.0;
  double mu_lo = 0.0, mu_hi = 0.0;
  Matrix chol_v_lower;  // L with V = L L^T; sphere vectors map back through L^{-T}
};

struct GeneratorSpec {
  Index n = 0;
  double delta = 1.0;          // diagonal shift in W, V = L L^T + delta I
  std::uint64_t seed = 0;
  double range = 10.0;         // entries drawn uniformly from [-range, range]
};

inline double default_sym_tol(const Matrix& m) { return 1e-8 * max_abs(m); }
inline double default_psd_tol(const Matrix& m) { return 1e-10 * (1.0 + max_abs(m)); }

namespace detail {

inline void check_square(const Matrix& m, Index n, const char* name) {
  require(m.rows() == n && m.cols() == n, ErrorCode::dimension_mismatch,
          std::string(name) + ": expected a square matrix matching the instance dimension");
}

inline Matrix symmetrized(const Matrix& m, double sym_tol, const char* name) {
  const double tol = sym_tol < 0.0 ? default_sym_tol(m) : sym_tol;
  const double asym = max_abs(m - m.transpose());
  require(asym <= tol, ErrorCode::not_symmetric,
          std::string(name) + ": asymmetry " + std::to_string(asym) + " exceeds tolerance");
  return 0.5 * (m + m.transpose());
}

inline void check_positive_definite(const Matrix& m, double psd_tol, const char* name) {
  const double tol = psd_tol < 0.0 ? default_psd_tol(m) : psd_tol;
  const Vector vals = sym_eigenvalues(m);
  require(vals(0) > tol, ErrorCode::not_positive_definite,
          std::string(name) + ": smallest eigenvalue " + std::to_string(vals(0)) +
              " is not positive");
}

}  // namespace detail

/// Checks shapes, symmetry (symmetrizing sub-tolerance noise) and definiteness of W, V.
inline SrqInstance validate(const Matrix& b, const Matrix& w, const Matrix& d, const Matrix& v,
                            double sym_tol = -1.0, double psd_tol = -1.0) {
  require(b.rows() > 0, ErrorCode::dimension_mismatch, "instance dimension must be positive");
  const Index n = b.rows();
  detail::check_square(b, n, "B");
  detail::check_square(w, n, "W");
  detail::check_square(d, n, "D");
  detail::check_square(v, n, "V");
  SrqInstance inst;
  inst.n = n;
  inst.B = detail::symmetrized(b, sym_tol, "B");
  inst.W = detail::symmetrized(w, sym_tol, "W");
  inst.D = detail::symmetrized(d, sym_tol, "D");
  inst.V = detail::symmetrized(v, sym_tol, "V");
  detail::check_positive_definite(inst.W, psd_tol, "W");
  detail::check_positive_definite(inst.V, psd_tol, "V");
  return inst;
}

inline SrqInstance validate(const Matrix& b, const Matrix& w, const Matrix& d,
                            double sym_tol = -1.0, double psd_tol = -1.0) {
  return validate(b, w, d, Matrix(Matrix::Identity(b.rows(), b.cols())), sym_tol, psd_tol);
}

/// Objective of the original instance at x != 0. Invariant under rescaling of x.
inline double f_srq(const SrqInstance& inst, const Vector& x) {
  require(x.size() == inst.n, ErrorCode::dimension_mismatch, "f_srq: vector size mismatch");
  require(x.norm() > 0.0, ErrorCode::zero_vector, "f_srq: x must be nonzero");
  const double xwx = x.dot(inst.W * x);
  const double xvx = x.dot(inst.V * x);
  return x.dot(inst.B * x) / xwx + x.dot(inst.D * x) / xvx;
}

/// Objective of the sphere form at a unit vector.
inline double f_sphere(const SphereContext& ctx, const Vector& x) {
  require(x.size() == ctx.n, ErrorCode::dimension_mismatch, "f_sphere: vector size mismatch");
  require(std::abs(x.norm() - 1.0) <= 1e-12, ErrorCode::not_unit_norm,
          "f_sphere: x must have unit norm");
  return x.dot(ctx.B * x) / x.dot(ctx.W * x) + x.dot(ctx.D * x);
}

/// Congruence by a triangular factor of V: sends V to the identity while preserving both
/// quotient values, then caches lambda_min/max(W) and the pencil range of (B, W).
inline SphereContext whiten(const SrqInstance& inst) {
  Eigen::LLT<Matrix> llt(inst.V);
  require(llt.info() == Eigen::Success, ErrorCode::not_positive_definite,
          "whiten: V is not positive definite");
  SphereContext ctx;
  ctx.n = inst.n;
  ctx.B = congruence_by_inverse_factor(llt, inst.B);
  ctx.W = congruence_by_inverse_factor(llt, inst.W);
  ctx.D = congruence_by_inverse_factor(llt, inst.D);
  const Vector wvals = sym_eigenvalues(ctx.W);
  ctx.lam_min_w = wvals(0);
  ctx.lam_max_w = wvals(wvals.size() - 1);
  std::tie(ctx.mu_lo, ctx.mu_hi) = pencil_extremes(ctx.B, ctx.W);
  ctx.chol_v_lower = llt.matrixL();
  return ctx;
}

/// Inverse of the whitening substitution: a sphere vector y maps to the original
/// coordinates as L^{-T} y.
inline Vector unwhiten_direction(const SphereContext& ctx, const Vector& y) {
  require(y.size() == ctx.n, ErrorCode::dimension_mismatch, "unwhiten: vector size mismatch");
  return ctx.chol_v_lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

/// Random instance: B, D symmetric with entries uniform on [-range, range]; W and V each
/// L L^T + delta I for a lower bidiagonal L (main diagonal and first subdiagonal).
/// Deterministic for a fixed spec. Draw order: B, D, L for W, L for V.
inline SrqInstance generate_random(const GeneratorSpec& spec) {
  require(spec.n >= 2, ErrorCode::precondition_violation, "generator: n must be at least 2");
  require(spec.delta > 0.0, ErrorCode::precondition_violation,
          "generator: delta must be positive");
  require(spec.range > 0.0, ErrorCode::precondition_violation,
          "generator: range must be positive");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u(-spec.range, spec.range);
  const Index n = spec.n;

  auto symmetric = [&]() {
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    return m;
  };
  auto shifted_gram = [&]() {
    Matrix l = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) l(i, i) = u(rng);
    for (Index i = 1; i < n; ++i) l(i, i - 1) = u(rng);
    return Matrix(l * l.transpose() + spec.delta * Matrix::Identity(n, n));
  };

  const Matrix b = symmetric();
  const Matrix d = symmetric();
  const Matrix w = shifted_gram();
  const Matrix v = shifted_gram();
  return validate(b, w, d, v);
}

}  // namespace srq
