// Command-line front end: solve instances from JSON, run the built-in example table,
// benchmark random instances to CSV, and stream branch-and-bound traces as JSON lines.

#include "CLI11.hpp"
#include "srq/srq.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct CommonFlags {
  double eps = 1e-5;
  double delta = 0.05;
  double tol = -1.0;
  std::string algorithm = "bnb";
  bool eval_right_endpoint = false;
  bool zero_time = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_algorithm = true) {
  cmd->add_option("--eps", f.eps, "branch-and-bound certificate tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--delta", f.delta, "two-stage grid spacing")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol, "two-stage refinement tolerance (default delta/100)");
  if (with_algorithm) {
    cmd->add_option("--algorithm", f.algorithm, "bnb, two-stage, or both")
        ->check(CLI::IsMember({"bnb", "two-stage", "both"}));
  }
  cmd->add_flag("--eval-right-endpoint", f.eval_right_endpoint,
                "also evaluate q at the pencil maximum exactly");
  cmd->add_flag("--zero-time", f.zero_time,
                "report wall times as 0 for byte-reproducible output");
}

srq::SolverConfig solver_config(const CommonFlags& f, bool trace = false) {
  srq::SolverConfig cfg;
  cfg.eps = f.eps;
  cfg.eval_right_endpoint = f.eval_right_endpoint;
  cfg.trace = trace;
  return cfg;
}

/// Report in original coordinates: x_star mapped back through the whitening factor and
/// the objective re-evaluated on the raw instance.
srq::Json original_coordinate_report(const srq::SrqInstance& inst, const srq::SphereContext& ctx,
                                     const srq::SolveReport& rep, double wall_ms) {
  srq::Json j = srq::report_to_json(rep);
  srq::Vector x = srq::unwhiten_direction(ctx, rep.x_star);
  x.normalize();
  srq::Json xj = srq::Json::array();
  for (srq::Index i = 0; i < x.size(); ++i) xj.push_back(x(i));
  j["x_star"] = xj;
  j["f_star"] = srq::f_srq(inst, x);
  j["wall_time_ms"] = wall_ms;
  return j;
}

int cmd_solve(const std::string& path, const CommonFlags& flags) {
  srq::SrqInstance inst;
  try {
    inst = srq::load_instance(path);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  try {
    const srq::SphereContext ctx = srq::whiten(inst);
    srq::Json out;
    auto run = [&](const std::string& algo) {
      const auto t0 = Clock::now();
      srq::SolveReport rep = algo == "bnb"
                                 ? srq::solve(ctx, solver_config(flags))
                                 : srq::two_stage_solve(ctx, flags.delta, flags.tol);
      const double ms = flags.zero_time ? 0.0 : elapsed_ms(t0);
      return original_coordinate_report(inst, ctx, rep, ms);
    };
    if (flags.algorithm == "both") {
      out["bnb"] = run("bnb");
      out["two-stage"] = run("two-stage");
    } else {
      out = run(flags.algorithm);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_examples(const CommonFlags& flags) {
  std::printf("%-9s %-20s %-10s %-6s %-8s %-11s %-8s %-6s\n", "name", "range", "bnb_mu*",
              "iters", "ts_mu*", "stage1", "checks", "");
  bool all_ok = true;
  for (const auto& ex : srq::builtin::all()) {
    const srq::SphereContext ctx = srq::whiten(ex.instance);
    const srq::SolveReport bnb = srq::solve(ctx, solver_config(flags));
    const srq::SolveReport ts = srq::two_stage_solve(ctx, flags.delta, flags.tol);

    const bool range_ok = std::abs(ctx.mu_lo - ex.mu_lo) <= 1e-4 &&
                          std::abs(ctx.mu_hi - ex.mu_hi) <= 1e-4;
    const bool mu_ok = std::abs(bnb.mu_star - ex.bnb_mu_star) <= 1e-3;
    const bool iter_ok = bnb.iterations <= 2 * ex.bnb_iterations;
    const bool stage1_ok = ts.stage1_evals == ex.stage1_evals;
    all_ok = all_ok && range_ok && mu_ok && iter_ok && stage1_ok;

    char range_buf[48];
    std::snprintf(range_buf, sizeof(range_buf), "[%.4f, %.4f]", ctx.mu_lo, ctx.mu_hi);
    std::printf("%-9s %-20s %-10.4f %-6ld %-8.4f %-11ld range=%s mu=%s iters=%s(ref %ld) stage1=%s\n",
                ex.name.c_str(), range_buf, bnb.mu_star, bnb.iterations, ts.mu_star,
                ts.stage1_evals, range_ok ? "ok" : "FAIL", mu_ok ? "ok" : "FAIL",
                iter_ok ? "ok" : "FAIL", ex.bnb_iterations, stage1_ok ? "ok" : "FAIL");
  }
  std::printf("examples: %s\n", all_ok ? "all checks passed" : "some checks FAILED");
  return 0;
}

struct BenchFlags {
  std::vector<long> sizes{30, 50, 80, 100, 120, 150, 180, 200};
  long trials = 10;
  std::uint64_t seed = 1;
  double delta_gen = 1.0;
};

std::uint64_t trial_seed(std::uint64_t base, long n, long trial) {
  return base * 1000003ULL + static_cast<std::uint64_t>(n) * 10007ULL +
         static_cast<std::uint64_t>(trial);
}

int cmd_bench(const BenchFlags& bench, const CommonFlags& flags) {
  std::cout << srq::kBenchCsvHeader << "\n";
  const bool run_bnb = flags.algorithm == "bnb" || flags.algorithm == "both";
  const bool run_ts = flags.algorithm == "two-stage" || flags.algorithm == "both";
  for (long n : bench.sizes) {
    for (long trial = 0; trial < bench.trials; ++trial) {
      srq::GeneratorSpec spec{n, bench.delta_gen, trial_seed(bench.seed, n, trial), 10.0};
      auto run = [&](const std::string& algo) {
        try {
          const srq::SrqInstance inst = srq::generate_random(spec);
          const srq::SphereContext ctx = srq::whiten(inst);
          const auto t0 = Clock::now();
          const srq::SolveReport rep = algo == "bnb"
                                           ? srq::solve(ctx, solver_config(flags))
                                           : srq::two_stage_solve(ctx, flags.delta, flags.tol);
          const double ms = flags.zero_time ? 0.0 : elapsed_ms(t0);
          std::cout << srq::bench_csv_row(n, trial, algo, rep, ms) << "\n";
        } catch (const srq::SrqError& e) {
          std::cout << srq::bench_csv_error_row(n, trial, algo, srq::error_code_name(e.code()))
                    << "\n";
        }
      };
      if (run_bnb) run("bnb");
      if (run_ts) run("two-stage");
    }
  }
  return 0;
}

int cmd_trace(const std::string& path, const CommonFlags& flags) {
  srq::SrqInstance inst;
  try {
    inst = srq::load_instance(path);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  try {
    const srq::SphereContext ctx = srq::whiten(inst);
    const srq::SolveReport rep = srq::solve(ctx, solver_config(flags, /*trace=*/true));
    srq::Json head{{"type", "init"},
                   {"mu_lo", ctx.mu_lo},
                   {"mu_hi", ctx.mu_hi},
                   {"lam_min_w", ctx.lam_min_w},
                   {"lam_max_w", ctx.lam_max_w},
                   {"eps", rep.eps}};
    std::cout << head.dump() << "\n";
    for (const auto& record : rep.trace) {
      std::cout << srq::trace_record_to_json(record).dump() << "\n";
    }
    srq::Json tail = srq::report_to_json(rep);
    tail["type"] = "summary";
    tail.erase("x_star");
    std::cout << tail.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"global solver for maximizing the sum of two generalized Rayleigh quotients"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string instance_path;

  auto* solve_cmd = app.add_subcommand("solve", "solve one instance from a JSON file");
  solve_cmd->add_option("instance", instance_path, "instance JSON file")->required();
  add_common(solve_cmd, flags);

  auto* examples_cmd =
      app.add_subcommand("examples", "solve the five built-in instances with both algorithms");
  add_common(examples_cmd, flags, /*with_algorithm=*/false);

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "random-instance benchmark, CSV on stdout");
  bench_cmd->add_option("--n", bench.sizes, "instance sizes")->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "trials per size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "base RNG seed");
  bench_cmd->add_option("--delta-gen", bench.delta_gen, "generator diagonal shift")
      ->check(CLI::PositiveNumber);
  add_common(bench_cmd, flags);

  auto* trace_cmd =
      app.add_subcommand("trace", "branch-and-bound trace as JSON lines on stdout");
  trace_cmd->add_option("instance", instance_path, "instance JSON file")->required();
  add_common(trace_cmd, flags, /*with_algorithm=*/false);

  CLI11_PARSE(app, argc, argv);

  if (solve_cmd->parsed()) return cmd_solve(instance_path, flags);
  if (examples_cmd->parsed()) return cmd_examples(flags);
  if (bench_cmd->parsed()) {
    if (bench_cmd->get_option("--algorithm")->count() == 0) flags.algorithm = "both";
    return cmd_bench(bench, flags);
  }
  if (trace_cmd->parsed()) return cmd_trace(instance_path, flags);
  return 0;
}
