#pragma once

#include <string>
#include <vector>

#include "srq/bounds.hpp"
#include "srq/core.hpp"

namespace srq {

enum class SolveStatus {
  optimal,              // branch-and-bound certificate reached
  heuristic,            // two-stage result, no optimality certificate
  iteration_capped,     // stopped by the safety cap before certification
  degenerate_interval,  // pencil range collapsed to a point; answer exact
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::heuristic: return "heuristic";
    case SolveStatus::iteration_capped: return "iteration_capped";
    case SolveStatus::degenerate_interval: return "degenerate_interval";
  }
  return "unknown";
}

/// One branch-and-bound pass: the interval that was split, the midpoint evaluation and
/// the bound lines of both children, plus the queue state after the push.
struct TraceRecord {
  long k = 0;
  double left_mu = 0.0, mid_mu = 0.0, right_mu = 0.0;
  double q_left = 0.0, q_mid = 0.0, q_right = 0.0;
  BoundLines lines_left, lines_right;
  double ub_left = 0.0, ub_right = 0.0;
  double lb = 0.0, ub_star = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::optimal;
  double mu_star = 0.0;
  double q_star = 0.0;   // best dual value found (the lower bound holder)
  Vector x_star;         // recovered unit vector, sphere coordinates
  double f_star = 0.0;   // sphere objective at x_star
  double residual = 0.0; // recovery defect |f - q| plus constraint violation
  double lb = 0.0;
  double ub = 0.0;       // certified upper bound including the right-strip cap
  double gap = 0.0;
  double lb_primal = 0.0;  // best sphere objective over all witnesses seen
  long iterations = 0;
  long dual_evals = 0;
  long stage1_evals = 0;  // two-stage only
  long stage2_evals = 0;  // two-stage only
  long open_nodes = 0;    // queue size at termination
  double mu_lo = 0.0, mu_hi = 0.0;
  long iteration_bound = 0;  // certified worst case ceil(range / eps); 0 when heuristic
  double eps = 0.0;
  double tau_dual = 0.0;
  std::vector<TraceRecord> trace;
};

}  // namespace srq
