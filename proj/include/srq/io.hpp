#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "srq/core.hpp"
#include "srq/instance.hpp"
#include "srq/report.hpp"

namespace srq {

using Json = nlohmann::json;

namespace detail {

inline Matrix parse_matrix(const Json& j, Index n, const std::string& name) {
  if (!j.is_array())
    throw std::invalid_argument(name + ": expected an array of numbers");
  const auto len = static_cast<Index>(j.size());
  const bool full = len == n * n;
  const bool diagonal = len == n;
  if (!full && !diagonal) {
    throw std::invalid_argument(name + ": expected " + std::to_string(n * n) + " (row-major) or " +
                                std::to_string(n) + " (diagonal) numbers, got " +
                                std::to_string(len));
  }
  for (const auto& e : j) {
    if (!e.is_number()) throw std::invalid_argument(name + ": entries must be numbers");
  }
  Matrix m = Matrix::Zero(n, n);
  if (full) {
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) m(i, k) = j[static_cast<std::size_t>(i * n + k)].get<double>();
  } else {
    for (Index i = 0; i < n; ++i) m(i, i) = j[static_cast<std::size_t>(i)].get<double>();
  }
  return m;
}

inline Json finite_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace detail

/// Instance schema: {"n": int, "B": [...], "W": [...], "D": [...], "V": [...]} where each
/// matrix is a row-major length-n^2 array or a length-n diagonal shorthand; V defaults to
/// the identity. Validation errors surface as SrqError, schema errors as
/// std::invalid_argument naming the offending field.
inline SrqInstance parse_instance(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance: expected a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw std::invalid_argument("n: expected a positive integer");
  const auto n = j.at("n").get<long>();
  if (n <= 0) throw std::invalid_argument("n: expected a positive integer");
  for (const char* field : {"B", "W", "D"}) {
    if (!j.contains(field))
      throw std::invalid_argument(std::string(field) + ": required field is missing");
  }
  const Matrix b = detail::parse_matrix(j.at("B"), n, "B");
  const Matrix w = detail::parse_matrix(j.at("W"), n, "W");
  const Matrix d = detail::parse_matrix(j.at("D"), n, "D");
  const Matrix v = j.contains("V") ? detail::parse_matrix(j.at("V"), n, "V")
                                   : Matrix(Matrix::Identity(n, n));
  return validate(b, w, d, v);
}

inline SrqInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  Json j = Json::parse(in);  // parse errors carry line/column context
  return parse_instance(j);
}

inline Json instance_to_json(const SrqInstance& inst) {
  auto flat = [&](const Matrix& m) {
    Json arr = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
      for (Index k = 0; k < m.cols(); ++k) arr.push_back(m(i, k));
    return arr;
  };
  return Json{{"n", inst.n}, {"B", flat(inst.B)}, {"W", flat(inst.W)}, {"D", flat(inst.D)},
              {"V", flat(inst.V)}};
}

inline Json report_to_json(const SolveReport& rep) {
  Json x = Json::array();
  for (Index i = 0; i < rep.x_star.size(); ++i) x.push_back(rep.x_star(i));
  return Json{{"status", to_string(rep.status)},
              {"mu_star", rep.mu_star},
              {"q_star", rep.q_star},
              {"x_star", x},
              {"f_star", rep.f_star},
              {"residual", rep.residual},
              {"lb", rep.lb},
              {"ub", detail::finite_or_null(rep.ub)},
              {"gap", detail::finite_or_null(rep.gap)},
              {"lb_primal", rep.lb_primal},
              {"iterations", rep.iterations},
              {"dual_evals", rep.dual_evals},
              {"stage1_evals", rep.stage1_evals},
              {"stage2_evals", rep.stage2_evals},
              {"mu_lo", rep.mu_lo},
              {"mu_hi", rep.mu_hi},
              {"iteration_bound", rep.iteration_bound},
              {"eps", rep.eps}};
}

inline Json bound_lines_to_json(const BoundLines& l) {
  return Json{{"range", {l.mu_i, l.mu_ip1}},
              {"q1", {{"anchor_mu", l.mu_i}, {"anchor_q", l.q1_intercept}, {"slope", l.q1_slope}}},
              {"q2", {{"anchor_mu", l.mu_ip1}, {"anchor_q", l.q2_intercept}, {"slope", l.q2_slope}}}};
}

/// One JSON line per branch-and-bound pass: the split interval, the midpoint evaluation,
/// and the two child segments with their bounds.
inline Json trace_record_to_json(const TraceRecord& r) {
  Json seg_l = bound_lines_to_json(r.lines_left);
  seg_l["ub"] = r.ub_left;
  Json seg_r = bound_lines_to_json(r.lines_right);
  seg_r["ub"] = r.ub_right;
  return Json{{"type", "iteration"},
              {"k", r.k},
              {"interval", {r.left_mu, r.right_mu}},
              {"point", {r.mid_mu, r.q_mid}},
              {"q_left", r.q_left},
              {"q_right", r.q_right},
              {"segments", {seg_l, seg_r}},
              {"lb", r.lb},
              {"ub_star", r.ub_star}};
}

inline constexpr const char* kBenchCsvHeader =
    "n,trial,algorithm,iterations,dual_evals,time_ms,q_star,gap,status";

inline std::string format_double(double x, const char* fmt = "%.12g") {
  if (!std::isfinite(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, x);
  return buf;
}

inline std::string bench_csv_row(long n, long trial, const std::string& algorithm,
                                 const SolveReport& rep, double time_ms) {
  std::ostringstream out;
  out << n << ',' << trial << ',' << algorithm << ',' << rep.iterations << ','
      << rep.dual_evals << ',' << format_double(time_ms, "%.3f") << ','
      << format_double(rep.q_star) << ',' << format_double(rep.gap) << ','
      << to_string(rep.status);
  return out.str();
}

inline std::string bench_csv_error_row(long n, long trial, const std::string& algorithm,
                                       const std::string& status) {
  std::ostringstream out;
  out << n << ',' << trial << ',' << algorithm << ",,,,,," << status;
  return out.str();
}

}  // namespace srq
