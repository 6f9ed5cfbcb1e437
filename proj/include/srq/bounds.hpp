#pragma once

#include <algorithm>
#include <cmath>

#include "srq/core.hpp"
#include "srq/dual.hpp"

namespace srq {

/// The two saw-tooth lines over an interval [mu_i, mu_ip1], in point-slope form.
/// q1 is anchored at the left endpoint with slope 1 - eta_i lambda_min(W); q2 at the
/// right endpoint with slope 1 - eta_ip1 lambda_max(W). Both overestimate q on the
/// interval for any dual-feasible endpoint pairs.
struct BoundLines {
  double mu_i = 0.0, mu_ip1 = 0.0;
  double q1_intercept = 0.0, q1_slope = 0.0;  // line value at mu_i
  double q2_intercept = 0.0, q2_slope = 0.0;  // line value at mu_ip1

  double q1_at(double mu) const { return q1_intercept + (mu - mu_i) * q1_slope; }
  double q2_at(double mu) const { return q2_intercept + (mu - mu_ip1) * q2_slope; }
  double envelope(double mu) const { return std::min(q1_at(mu), q2_at(mu)); }
};

inline double default_width_floor(const SphereContext& ctx) {
  return 1e-14 * (1.0 + std::abs(ctx.mu_hi));
}

inline BoundLines build_lines(const DualEval& left, const DualEval& right,
                              const SphereContext& ctx, double width_floor = -1.0) {
  if (width_floor < 0.0) width_floor = default_width_floor(ctx);
  require(left.mu < right.mu && right.mu < ctx.mu_hi, ErrorCode::precondition_violation,
          "build_lines: need left.mu < right.mu < mu_hi");
  require(left.eta >= 0.0 && right.eta >= 0.0, ErrorCode::precondition_violation,
          "build_lines: dual multipliers must be nonnegative");
  require(right.mu - left.mu >= width_floor, ErrorCode::degenerate_interval,
          "build_lines: interval width below the floor");
  BoundLines lines;
  lines.mu_i = left.mu;
  lines.mu_ip1 = right.mu;
  lines.q1_intercept = left.q;
  lines.q1_slope = 1.0 - left.eta * ctx.lam_min_w;
  lines.q2_intercept = right.q;
  lines.q2_slope = 1.0 - right.eta * ctx.lam_max_w;
  return lines;
}

struct UpperBound {
  double value = 0.0;
  double argmax_mu = 0.0;
};

/// Closed-form maximum of min(q1, q2) over the interval. When q1 does not increase the
/// maximum sits at the left endpoint; when q2 does not decrease, at the right endpoint;
/// otherwise at the crossing of the two lines, clamped into the interval so that inexact
/// endpoint data can only loosen the bound. If both endpoint cases hold at once the
/// smaller endpoint value is returned.
inline UpperBound interval_upper_bound(const BoundLines& l) {
  const bool left_case = l.q1_slope <= 0.0;
  const bool right_case = l.q2_slope >= 0.0;
  if (left_case && right_case) {
    if (l.q1_intercept <= l.q2_intercept) return {l.q1_intercept, l.mu_i};
    return {l.q2_intercept, l.mu_ip1};
  }
  if (left_case) return {l.q1_intercept, l.mu_i};
  if (right_case) return {l.q2_intercept, l.mu_ip1};
  // q1 rises and q2 falls, so the slope difference is strictly positive.
  double mu0 = (l.q2_intercept - l.q1_intercept + l.mu_i * l.q1_slope - l.mu_ip1 * l.q2_slope) /
               (l.q1_slope - l.q2_slope);
  mu0 = std::clamp(mu0, l.mu_i, l.mu_ip1);
  return {l.q1_at(mu0), mu0};
}

/// One-sided unit-slope bound q(mu) <= q(mu_i) + (mu - mu_i) for mu >= mu_i. Valid up to
/// and including the pencil maximum, which covers the strip the interval bounds omit.
inline double slope_one_bound(const DualEval& left, double mu) {
  require(mu >= left.mu, ErrorCode::precondition_violation,
          "slope_one_bound: mu must not lie left of the anchor");
  return left.q + (mu - left.mu);
}

}  // namespace srq
