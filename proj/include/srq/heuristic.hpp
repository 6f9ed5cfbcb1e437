#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "srq/core.hpp"
#include "srq/dual.hpp"
#include "srq/instance.hpp"
#include "srq/recovery.hpp"
#include "srq/report.hpp"

namespace srq {

/// Stage-one grid scan: q evaluated on a delta-spaced mesh of [mu_lo, mu_hi] plus the
/// collected three-point patterns (interior points dominating both neighbours).
struct GridScan {
  double delta = 0.0;
  std::vector<double> grid;
  std::vector<double> q_values;
  std::vector<std::array<std::size_t, 3>> patterns;
  long evals = 0;
};

struct LocalMax {
  double mu = 0.0;
  double q = 0.0;
  long evals = 0;
};

namespace detail {

/// Vertex of the parabola through three points, or nothing when they are collinear.
inline std::optional<double> parabola_vertex(double a, double fa, double b, double fb, double c,
                                             double fc) {
  const double t1 = (b - a) * (fb - fc);
  const double t2 = (b - c) * (fb - fa);
  const double den = t1 - t2;
  const double scale = std::abs(t1) + std::abs(t2);
  if (scale == 0.0 || std::abs(den) <= 1e-12 * scale) return std::nullopt;
  const double num = (b - a) * t1 - (b - c) * t2;
  return b - 0.5 * num / den;
}

/// Successive parabolic interpolation for a maximum, keeping a three-point pattern.
/// Never evaluates outside the open bracket; stops on bracket width, a degenerate
/// parabola, or a vertex collapsing onto the middle point.
inline LocalMax parabolic_refine(const std::function<double(double)>& f,
                                 std::array<double, 3> mu, std::array<double, 3> q, double tol) {
  require(mu[0] < mu[1] && mu[1] < mu[2], ErrorCode::degenerate_triple,
          "parabolic_refine: bracket points must be strictly increasing");
  require(std::max(q[0], q[2]) <= q[1], ErrorCode::degenerate_triple,
          "parabolic_refine: the middle point must dominate the bracket");
  require(tol > 0.0, ErrorCode::precondition_violation, "parabolic_refine: tol must be positive");

  LocalMax best{mu[1], q[1], 0};
  constexpr int kMaxSteps = 100;
  for (int step = 0; step < kMaxSteps && mu[2] - mu[0] > tol; ++step) {
    const auto vertex = parabola_vertex(mu[0], q[0], mu[1], q[1], mu[2], q[2]);
    if (!vertex) break;
    const double guard = 1e-3 * std::min(tol, mu[2] - mu[0]);
    const double u = std::clamp(*vertex, mu[0] + guard, mu[2] - guard);
    if (std::abs(u - mu[1]) <= 1e-12 * (1.0 + std::abs(mu[1]))) break;
    const double qu = f(u);
    ++best.evals;
    if (qu > best.q) {
      best.mu = u;
      best.q = qu;
    }
    if (u < mu[1]) {
      if (qu >= q[1]) {
        mu = {mu[0], u, mu[1]};
        q = {q[0], qu, q[1]};
      } else {
        mu[0] = u;
        q[0] = qu;
      }
    } else {
      if (qu >= q[1]) {
        mu = {mu[1], u, mu[2]};
        q = {q[1], qu, q[2]};
      } else {
        mu[2] = u;
        q[2] = qu;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Builds the stage-one grid mu_lo + (i-1) delta and appends mu_hi when the range is not
/// an integer multiple of delta (snapping near-integer ratios so the final point is
/// always exactly mu_hi). Interior points go through evaluate_q; the final point through
/// the null-space evaluation.
inline GridScan stage1_scan(const SphereContext& ctx, double delta, const DualSettings& ds = {}) {
  require(delta > 0.0, ErrorCode::precondition_violation, "stage1_scan: delta must be positive");
  GridScan scan;
  scan.delta = delta;
  const double range = ctx.mu_hi - ctx.mu_lo;
  const double ratio = range / delta;
  const double snapped = std::round(ratio);
  const bool integral = std::abs(ratio - snapped) <= 1e-9 * (1.0 + std::abs(ratio));
  const long m = integral ? static_cast<long>(snapped) : static_cast<long>(std::floor(ratio));
  for (long i = 0; i <= m; ++i) scan.grid.push_back(ctx.mu_lo + static_cast<double>(i) * delta);
  if (integral) {
    scan.grid.back() = ctx.mu_hi;
  } else {
    scan.grid.push_back(ctx.mu_hi);
  }

  scan.q_values.reserve(scan.grid.size());
  for (std::size_t i = 0; i + 1 < scan.grid.size(); ++i) {
    scan.q_values.push_back(evaluate_q(ctx, scan.grid[i], ds).q);
  }
  scan.q_values.push_back(q_at_mu_hi(ctx).q);
  scan.evals = static_cast<long>(scan.grid.size());

  for (std::size_t i = 1; i + 1 < scan.grid.size(); ++i) {
    if (std::max(scan.q_values[i - 1], scan.q_values[i + 1]) <= scan.q_values[i]) {
      scan.patterns.push_back({i - 1, i, i + 1});
    }
  }
  return scan;
}

/// Quadratic-fit refinement of one three-point pattern.
inline LocalMax quadratic_fit_search(const SphereContext& ctx, std::array<double, 3> mu,
                                     std::array<double, 3> q, double tol,
                                     const DualSettings& ds = {}) {
  auto f = [&](double m) { return evaluate_q(ctx, m, ds).q; };
  return detail::parabolic_refine(f, mu, q, tol);
}

/// The two-stage baseline: grid scan, quadratic-fit refinement of every pattern, then the
/// best of the endpoints and all refined local maximizers. Heuristic only; the report
/// carries no optimality certificate.
inline SolveReport two_stage_solve(const SphereContext& ctx, double delta = 0.05,
                                   double tol = -1.0, const DualSettings& ds = {}) {
  if (tol < 0.0) tol = delta / 100.0;
  require(tol > 0.0 && tol < delta, ErrorCode::precondition_violation,
          "two_stage_solve: tol must lie in (0, delta)");
  GridScan scan = stage1_scan(ctx, delta, ds);

  double best_mu = scan.grid.front();
  double best_q = scan.q_values.front();
  if (scan.q_values.back() > best_q) {
    best_mu = scan.grid.back();
    best_q = scan.q_values.back();
  }
  long stage2 = 0;
  for (const auto& p : scan.patterns) {
    const LocalMax lm = quadratic_fit_search(
        ctx, {scan.grid[p[0]], scan.grid[p[1]], scan.grid[p[2]]},
        {scan.q_values[p[0]], scan.q_values[p[1]], scan.q_values[p[2]]}, tol, ds);
    stage2 += lm.evals;
    if (lm.q > best_q) {
      best_mu = lm.mu;
      best_q = lm.q;
    }
  }

  SolveReport rep;
  rep.status = SolveStatus::heuristic;
  rep.mu_lo = ctx.mu_lo;
  rep.mu_hi = ctx.mu_hi;
  rep.mu_star = best_mu;
  rep.q_star = best_q;
  rep.lb = best_q;
  rep.ub = std::numeric_limits<double>::infinity();
  rep.gap = std::numeric_limits<double>::infinity();
  rep.stage1_evals = scan.evals;
  rep.stage2_evals = stage2;
  rep.iterations = scan.evals;  // grid passes, reported for parity with the exact solver
  rep.dual_evals = scan.evals + stage2;

  if (best_mu == ctx.mu_hi) {
    Recovery rec = recover_at_mu_hi(ctx);
    rep.x_star = rec.x;
    rep.f_star = rec.f;
    rep.residual = rec.residual;
  } else {
    // witnesses are not retained during the scan; one extra evaluation recovers the vector
    DualEval e = evaluate_q(ctx, best_mu, ds);
    ++rep.dual_evals;
    Recovery rec = recover_solution(ctx, e);
    rep.x_star = rec.x;
    rep.f_star = rec.f;
    rep.residual = rec.residual;
  }
  rep.lb_primal = rep.f_star;
  return rep;
}

}  // namespace srq
