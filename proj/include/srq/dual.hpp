#pragma once

#include <cmath>
#include <utility>

#include "srq/core.hpp"
#include "srq/instance.hpp"
#include "srq/spectral.hpp"

namespace srq {

/// Controls the one-dimensional dual minimization inside evaluate_q.
struct DualSettings {
  double tol_eta = 1e-10;  // golden-section width target, scaled by (1 + bracket size)
  double eta_cap = 1e12;   // bracket doubling beyond this reports BracketFailure
};

/// One evaluation of the value function q(mu) = mu + g(mu) through its dual form.
/// The pair (nu, eta) is always dual feasible: nu = lambda_max(D + eta (B - mu W)) with
/// eta >= 0, so nu >= g(mu) holds even under inexact minimization.
struct DualEval {
  double mu = 0.0;
  double eta = 0.0;
  double nu = 0.0;
  double q = 0.0;  // mu + nu
  Vector witness;  // unit top eigenvector of D + eta (B - mu W)
  double constraint_value = 0.0;  // witness^T (B - mu W) witness
};

/// lambda_max(D + eta (B - mu W)) with its eigenpair. Convex in eta as a pointwise
/// maximum of affine functions; the witness quadratic form is a subgradient.
inline EigPair phi(const SphereContext& ctx, double mu, double eta) {
  require(eta >= 0.0, ErrorCode::precondition_violation, "phi: eta must be nonnegative");
  return sym_eig_extreme(ctx.D + eta * (ctx.B - mu * ctx.W), Extreme::max);
}

/// Evaluates q(mu) for mu_lo <= mu < mu_hi by minimizing phi over eta >= 0.
///
/// If the subgradient at eta = 0 is already nonnegative the witness is feasible and
/// lambda_max(D) is exact. Otherwise the minimizer is bracketed by doubling (the
/// subgradient must turn nonnegative since lambda_max(B - mu W) > 0 below the pencil
/// maximum) and located by golden section; the best evaluated point is returned, which
/// keeps the result dual feasible regardless of the remaining bracket width.
inline DualEval evaluate_q(const SphereContext& ctx, double mu, const DualSettings& s = {}) {
  require(mu < ctx.mu_hi, ErrorCode::precondition_violation,
          "evaluate_q: mu must lie strictly below the pencil maximum");
  require(mu >= ctx.mu_lo - 1e-9 * (1.0 + std::abs(ctx.mu_lo)), ErrorCode::precondition_violation,
          "evaluate_q: mu must not lie below the pencil minimum");

  const Matrix a = ctx.B - mu * ctx.W;

  auto value_at = [&](double eta) { return sym_eigenvalues(ctx.D + eta * a).tail<1>()(0); };
  auto finish = [&](double eta) {
    EigPair p = sym_eig_extreme(ctx.D + eta * a, Extreme::max);
    const double c = p.vector.dot(a * p.vector);
    return DualEval{mu, eta, p.value, mu + p.value, std::move(p.vector), c};
  };

  const double zero_tol = 1e-11 * (1.0 + max_abs(a));
  DualEval at_zero = finish(0.0);
  if (at_zero.constraint_value >= -zero_tol) return at_zero;

  double best_eta = 0.0;
  double best_val = at_zero.nu;
  auto consider = [&](double eta, double val) {
    if (val < best_val) {
      best_val = val;
      best_eta = eta;
    }
  };

  double hi = 1.0;
  DualEval at_hi = finish(hi);
  consider(hi, at_hi.nu);
  while (at_hi.constraint_value < 0.0) {
    hi *= 2.0;
    require(hi <= s.eta_cap, ErrorCode::bracket_failure,
            "evaluate_q: eta bracket exceeded the cap; mu is numerically at the pencil maximum");
    at_hi = finish(hi);
    consider(hi, at_hi.nu);
  }

  const double inv_gold = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, up = hi;
  double c = up - inv_gold * (up - lo);
  double d = lo + inv_gold * (up - lo);
  double fc = value_at(c), fd = value_at(d);
  consider(c, fc);
  consider(d, fd);
  const double tol = s.tol_eta * (1.0 + hi);
  while (up - lo > tol) {
    if (fc <= fd) {
      up = d;
      d = c;
      fd = fc;
      c = up - inv_gold * (up - lo);
      fc = value_at(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_gold * (up - lo);
      fd = value_at(d);
      consider(d, fd);
    }
  }

  if (best_eta == 0.0) return at_zero;
  if (best_eta == hi) return at_hi;
  return finish(best_eta);
}

struct SpherePoint {
  double q = 0.0;
  Vector x;
};

/// q at the pencil maximum itself, where the feasible set collapses onto the null space
/// of B - mu_hi W and the evaluation is a plain maximum eigenvalue problem.
inline SpherePoint q_at_mu_hi(const SphereContext& ctx) {
  EigPair p = nullspace_max_quadratic(ctx.B - ctx.mu_hi * ctx.W, ctx.D);
  return {ctx.mu_hi + p.value, std::move(p.vector)};
}

/// Exact g(mu) for diagonal instances: the two-constraint linear program
/// max sum d_i t_i s.t. sum t_i = 1, sum (b_i - mu w_i) t_i >= 0, t >= 0 attains its
/// optimum at a feasible singleton or a sign-crossing pair mixed to a tight constraint.
inline double diagonal_oracle(const Vector& b, const Vector& w, const Vector& d, double mu) {
  const Index n = b.size();
  require(w.size() == n && d.size() == n, ErrorCode::dimension_mismatch,
          "diagonal_oracle: vector sizes must match");
  require(n > 0 && w.minCoeff() > 0.0, ErrorCode::precondition_violation,
          "diagonal_oracle: w must be positive componentwise");
  const Vector c = b - mu * w;
  double best = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i)
    if (c(i) >= 0.0) best = std::max(best, d(i));
  for (Index i = 0; i < n; ++i) {
    if (c(i) <= 0.0) continue;
    for (Index j = 0; j < n; ++j) {
      if (c(j) >= 0.0) continue;
      best = std::max(best, (d(i) * (-c(j)) + d(j) * c(i)) / (c(i) - c(j)));
    }
  }
  require(std::isfinite(best), ErrorCode::infeasible,
          "diagonal_oracle: no feasible point; mu is at or above the pencil maximum");
  return best;
}

}  // namespace srq
