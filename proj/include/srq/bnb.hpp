#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "srq/bounds.hpp"
#include "srq/core.hpp"
#include "srq/dual.hpp"
#include "srq/instance.hpp"
#include "srq/recovery.hpp"
#include "srq/report.hpp"

namespace srq {

struct SolverConfig {
  double eps = 1e-5;       // certificate tolerance
  double tau_dual = -1.0;  // dual evaluation slack used in certificates; <0 means eps/100
  double tol_eta = 1e-10;  // golden-section width scale, see DualSettings
  double eta_cap = 1e12;
  double width_floor = -1.0;  // <0 means 1e-14 * (1 + |mu_hi|)
  long max_iter = -1;         // safety cap; <0 means ceil(range/eps) + 8
  bool eval_right_endpoint = false;  // additionally evaluate q(mu_hi) exactly
  bool trace = false;
};

/// A queue node: the interval endpoints with their dual evaluations and the interval
/// upper bound. Ordered by ub, then width, then smaller left endpoint.
struct IntervalNode {
  DualEval left, right;
  double ub = 0.0;
  double argmax_mu = 0.0;
  BoundLines lines;

  double width() const { return right.mu - left.mu; }
};

struct IntervalNodeOrder {
  bool operator()(const IntervalNode& a, const IntervalNode& b) const {
    if (a.ub != b.ub) return a.ub < b.ub;
    if (a.width() != b.width()) return a.width() < b.width();
    return a.left.mu > b.left.mu;
  }
};

struct SolverState {
  std::priority_queue<IntervalNode, std::vector<IntervalNode>, IntervalNodeOrder> queue;
  double lb = -std::numeric_limits<double>::infinity();
  double incumbent_mu = 0.0;
  DualEval incumbent_eval;         // valid when !incumbent_at_mu_hi
  Vector incumbent_witness;
  bool incumbent_at_mu_hi = false;
  double strip_cap = std::numeric_limits<double>::infinity();  // unit-slope cap on the
                                                               // region the queue omits
  long iterations = 0;  // list size convention: 1 after the initial endpoints, +1 per split
  long dual_evals = 0;
  double lb_primal = -std::numeric_limits<double>::infinity();
};

/// Rigorous optimality gap: the queue maximum and the unit-slope cap over the uncovered
/// right strip, measured against the incumbent.
inline double certified_gap(const SolverState& st) {
  double ub = st.strip_cap;
  if (!st.queue.empty()) ub = std::max(ub, st.queue.top().ub);
  return ub - st.lb;
}

namespace detail {

inline void finalize_report(const SphereContext& ctx, SolveReport& rep, SolverState& st) {
  rep.lb = st.lb;
  rep.q_star = st.lb;
  rep.mu_star = st.incumbent_mu;
  rep.gap = certified_gap(st);
  rep.ub = st.lb + rep.gap;
  rep.iterations = st.iterations;
  rep.dual_evals = st.dual_evals;
  rep.open_nodes = static_cast<long>(st.queue.size());

  Recovery rec = st.incumbent_at_mu_hi ? recover_at_mu_hi(ctx)
                                       : recover_solution(ctx, st.incumbent_eval);
  rep.x_star = rec.x;
  rep.f_star = rec.f;
  rep.residual = rec.residual;
  rep.lb_primal = std::max(st.lb_primal, rec.f);
}

}  // namespace detail

/// Saw-tooth branch-and-bound over [mu_lo, mu_hi - eps].
///
/// The initial interval is bisected at its arithmetic midpoint; each child receives the
/// closed-form bound of its endpoint lines and enters a max-priority queue. The search
/// stops once the queue maximum is within eps of the best evaluated value; the returned
/// point is then eps-optimal for the full range because the omitted strip
/// [mu_hi - eps, mu_hi] is covered by the unit-slope bound from its left edge.
inline SolveReport solve(const SphereContext& ctx, const SolverConfig& cfg = {}) {
  require(cfg.eps > 0.0, ErrorCode::precondition_violation, "solve: eps must be positive");
  const double eps = cfg.eps;
  const double tau = cfg.tau_dual < 0.0 ? eps / 100.0 : cfg.tau_dual;
  const double width_floor = cfg.width_floor < 0.0 ? default_width_floor(ctx) : cfg.width_floor;
  const double range = ctx.mu_hi - ctx.mu_lo;
  const long worst_case = static_cast<long>(std::ceil(std::max(range, 0.0) / eps));
  const long max_iter = cfg.max_iter < 0 ? worst_case + 8 : cfg.max_iter;
  const DualSettings ds{cfg.tol_eta, cfg.eta_cap};

  SolveReport rep;
  rep.mu_lo = ctx.mu_lo;
  rep.mu_hi = ctx.mu_hi;
  rep.eps = eps;
  rep.tau_dual = tau;
  rep.iteration_bound = worst_case;

  SolverState st;
  auto consider_primal = [&](const Vector& x) {
    st.lb_primal = std::max(st.lb_primal, f_sphere(ctx, x.normalized()));
  };
  auto eval_at = [&](double mu) {
    DualEval e = evaluate_q(ctx, mu, ds);
    ++st.dual_evals;
    consider_primal(e.witness);
    if (e.q > st.lb) {
      st.lb = e.q;
      st.incumbent_mu = e.mu;
      st.incumbent_eval = e;
      st.incumbent_witness = e.witness;
      st.incumbent_at_mu_hi = false;
    }
    return e;
  };
  auto try_right_endpoint = [&]() {
    SpherePoint p = q_at_mu_hi(ctx);
    consider_primal(p.x);
    if (p.q > st.lb) {
      st.lb = p.q;
      st.incumbent_mu = ctx.mu_hi;
      st.incumbent_witness = p.x;
      st.incumbent_at_mu_hi = true;
    }
  };
  auto make_node = [&](const DualEval& l, const DualEval& r) {
    IntervalNode node{l, r, 0.0, 0.0, {}};
    if (r.mu - l.mu <= width_floor) {
      // point-like interval: bounded by its endpoint values, never worth splitting
      node.ub = std::max(l.q, r.q);
      node.argmax_mu = l.q >= r.q ? l.mu : r.mu;
      node.lines = BoundLines{l.mu, r.mu, node.ub, 0.0, node.ub, 0.0};
      return node;
    }
    node.lines = build_lines(l, r, ctx, width_floor);
    const UpperBound ub = interval_upper_bound(node.lines);
    node.ub = ub.value;
    node.argmax_mu = ub.argmax_mu;
    return node;
  };

  // degenerate pencil: the whole search interval is one point, evaluated exactly
  if (range <= width_floor) {
    SpherePoint p = q_at_mu_hi(ctx);
    ++st.dual_evals;
    consider_primal(p.x);
    st.lb = p.q;
    st.incumbent_mu = ctx.mu_hi;
    st.incumbent_witness = p.x;
    st.incumbent_at_mu_hi = true;
    st.strip_cap = p.q + range;
    rep.status = SolveStatus::degenerate_interval;
    detail::finalize_report(ctx, rep, st);
    return rep;
  }

  DualEval left = eval_at(ctx.mu_lo);
  const double mu2 = ctx.mu_hi - eps;
  if (mu2 <= ctx.mu_lo) {
    // the unit-slope bound from mu_lo already certifies the whole range
    st.strip_cap = left.q + range;
    if (cfg.eval_right_endpoint) try_right_endpoint();
    rep.status = SolveStatus::optimal;
    detail::finalize_report(ctx, rep, st);
    return rep;
  }
  DualEval right = eval_at(mu2);
  st.strip_cap = right.q + eps;
  st.iterations = 1;
  if (cfg.eval_right_endpoint) try_right_endpoint();

  IntervalNode current{left, right, 0.0, 0.0, {}};
  rep.status = SolveStatus::iteration_capped;
  while (true) {
    if (st.iterations >= max_iter) {
      // keep the unsplit interval in the certificate before giving up
      st.queue.push(make_node(current.left, current.right));
      break;
    }
    const double mid_mu = 0.5 * (current.left.mu + current.right.mu);
    DualEval mid = eval_at(mid_mu);
    IntervalNode child_l = make_node(current.left, mid);
    IntervalNode child_r = make_node(mid, current.right);
    st.queue.push(child_l);
    st.queue.push(child_r);
    ++st.iterations;
    const double ub_star = st.queue.top().ub;
    if (cfg.trace) {
      rep.trace.push_back(TraceRecord{st.iterations, current.left.mu, mid.mu, current.right.mu,
                                      current.left.q, mid.q, current.right.q, child_l.lines,
                                      child_r.lines, child_l.ub, child_r.ub, st.lb, ub_star});
    }
    if (ub_star <= st.lb + eps) {
      rep.status = SolveStatus::optimal;
      break;
    }
    current = st.queue.top();
    st.queue.pop();
  }

  require(rep.status != SolveStatus::optimal || st.iterations <= worst_case,
          ErrorCode::convergence_failure,
          "solve: iteration count exceeded the certified worst case");
  detail::finalize_report(ctx, rep, st);
  return rep;
}

}  // namespace srq
