#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace srq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorCode {
  dimension_mismatch,
  not_symmetric,
  not_positive_definite,
  zero_vector,
  not_unit_norm,
  convergence_failure,
  empty_nullspace,
  precondition_violation,
  bracket_failure,
  degenerate_interval,
  degenerate_triple,
  infeasible,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_symmetric: return "NotSymmetric";
    case ErrorCode::not_positive_definite: return "NotPositiveDefinite";
    case ErrorCode::zero_vector: return "ZeroVector";
    case ErrorCode::not_unit_norm: return "NotUnitNorm";
    case ErrorCode::convergence_failure: return "ConvergenceFailure";
    case ErrorCode::empty_nullspace: return "EmptyNullspace";
    case ErrorCode::precondition_violation: return "PreconditionViolation";
    case ErrorCode::bracket_failure: return "BracketFailure";
    case ErrorCode::degenerate_interval: return "DegenerateInterval";
    case ErrorCode::degenerate_triple: return "DegenerateTriple";
    case ErrorCode::infeasible: return "Infeasible";
  }
  return "UnknownError";
}

/// Library error carrying a stable machine-checkable code.
class SrqError : public std::runtime_error {
 public:
  SrqError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw SrqError(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace srq
