#pragma once

#include <cmath>
#include <vector>

#include "srq/core.hpp"
#include "srq/dual.hpp"
#include "srq/instance.hpp"
#include "srq/spectral.hpp"

namespace srq {

struct Recovery {
  Vector x;
  double f = 0.0;
  double residual = 0.0;  // |f - q| + max(0, -x^T (B - mu W) x)
};

/// Recovers a sphere vector from a dual evaluation at mu < mu_hi. The witness (the top
/// eigenvector of D + eta (B - mu W)) is the solution when it satisfies the quadratic
/// constraint. Near the dual optimum the top eigenvalue is typically a near-double and
/// the witness can land on the infeasible branch; in that case a unit combination of the
/// top two eigenvectors with vanishing constraint value is searched and the best feasible
/// candidate kept. The residual is reported either way.
inline Recovery recover_solution(const SphereContext& ctx, const DualEval& eval,
                                 double feas_tol = 1e-6) {
  const Matrix a = ctx.B - eval.mu * ctx.W;
  auto constraint = [&](const Vector& x) { return x.dot(a * x); };

  Vector witness = eval.witness.normalized();
  std::vector<Vector> candidates{witness};
  if (constraint(witness) < -feas_tol && ctx.n >= 2) {
    auto es = sym_eig(ctx.D + eval.eta * a);
    const Vector& vals = es.eigenvalues();
    const Index n = vals.size();
    if (vals(n - 1) - vals(n - 2) <= 1e-6 * (1.0 + std::abs(vals(n - 1)))) {
      const Vector v1 = es.eigenvectors().col(n - 1);
      const Vector v2 = es.eigenvectors().col(n - 2);
      candidates.push_back(v2);
      const double al = v1.dot(a * v1);
      const double be = v1.dot(a * v2);
      const double ga = v2.dot(a * v2);
      const double disc = be * be - al * ga;
      if (disc >= 0.0 && ga != 0.0) {
        for (double sign : {1.0, -1.0}) {
          const double t = (-be + sign * std::sqrt(disc)) / ga;
          if (std::isfinite(t)) candidates.push_back(Vector((v1 + t * v2).normalized()));
        }
      }
    }
  }

  // keep the candidate with the smallest defect |f - q| + constraint violation
  Recovery best;
  for (const Vector& x : candidates) {
    const double f = f_sphere(ctx, x);
    const double defect = std::abs(f - eval.q) + std::max(0.0, -constraint(x));
    if (best.x.size() == 0 || defect < best.residual) best = {x, f, defect};
  }
  return best;
}

/// Recovery at mu_hi itself: the D-maximizing direction inside the pencil null space.
inline Recovery recover_at_mu_hi(const SphereContext& ctx) {
  SpherePoint p = q_at_mu_hi(ctx);
  const double f = f_sphere(ctx, p.x);
  const double c = p.x.dot((ctx.B - ctx.mu_hi * ctx.W) * p.x);
  return {p.x, f, std::abs(f - p.q) + std::max(0.0, -c)};
}

}  // namespace srq
