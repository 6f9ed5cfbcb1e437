#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "srq/bnb.hpp"
#include "srq/examples.hpp"
#include "srq/recovery.hpp"

using namespace srq;

TEST_CASE("recovery at an eta-zero optimum reads off the top eigenvector", "[recovery]") {
  const SphereContext ctx = whiten(builtin::all()[3].instance);
  const DualEval e = evaluate_q(ctx, -1.0);
  REQUIRE(e.eta == 0.0);
  const Recovery rec = recover_solution(ctx, e);
  CHECK(std::abs(rec.x(8)) == Catch::Approx(1.0).margin(1e-10));
  CHECK(rec.f == Catch::Approx(31.0).margin(1e-9));
  CHECK(rec.residual <= 1e-9);
}

TEST_CASE("recovery rotates an infeasible witness inside a near-double top eigenspace",
          "[recovery]") {
  const SphereContext ctx = whiten(builtin::all()[1].instance);
  // hand-built evaluation at the dual kink of mu = 4.4 with the witness on the
  // constraint-violating branch
  DualEval e;
  e.mu = 4.4;
  e.eta = 3.0 / 21.2;
  e.nu = 2.0 + 0.2 * e.eta;
  e.q = e.mu + e.nu;
  e.witness = Vector::Zero(3);
  e.witness(0) = 1.0;
  e.constraint_value = -21.0;
  const Recovery rec = recover_solution(ctx, e);
  CHECK(std::abs(rec.x.norm() - 1.0) <= 1e-12);
  CHECK(rec.x.dot((ctx.B - 4.4 * ctx.W) * rec.x) >= -1e-6);
  CHECK(rec.f == Catch::Approx(e.q).margin(1e-9));
  CHECK(rec.residual <= 1e-8);
}

TEST_CASE("recovery with isotropic D never falls below the dual value", "[recovery]") {
  const auto& ex2 = builtin::all()[1].instance;
  const SphereContext ctx = whiten(validate(ex2.B, ex2.W, Matrix(2.0 * Matrix::Identity(3, 3))));
  const DualEval e = evaluate_q(ctx, 2.0);
  const Recovery rec = recover_solution(ctx, e);
  CHECK(rec.f >= e.q - 1e-9);
}

TEST_CASE("recovery at the pencil maximum", "[recovery]") {
  const Recovery r2 = recover_at_mu_hi(whiten(builtin::all()[1].instance));
  CHECK(std::abs(r2.x(1)) == Catch::Approx(1.0).margin(1e-9));
  CHECK(r2.f == Catch::Approx(6.5).margin(1e-9));

  const Recovery r4 = recover_at_mu_hi(whiten(builtin::all()[3].instance));
  CHECK(std::abs(r4.x(6)) == Catch::Approx(1.0).margin(1e-9));
  CHECK(r4.f == Catch::Approx(10.0 / 3.0).margin(1e-9));

  // a full null space falls back to the plain top eigenvector of D
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 4.0, 1.0;
  const SphereContext ctx = whiten(validate(Matrix::Identity(2, 2), Matrix::Identity(2, 2), d));
  const Recovery full = recover_at_mu_hi(ctx);
  CHECK(full.f == Catch::Approx(5.0).margin(1e-12));
}

TEST_CASE("recovered solutions are tight on the built-in instances", "[recovery]") {
  for (const auto& ex : builtin::all()) {
    const SphereContext ctx = whiten(ex.instance);
    const SolveReport rep = solve(ctx);
    INFO(ex.name);
    CHECK(std::abs(rep.x_star.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(rep.f_star - rep.q_star) <= 1e-4);
    CHECK(rep.f_star <= rep.ub + 1e-9);        // any unit vector is feasible
    CHECK(rep.f_star == Catch::Approx(rep.lb_primal).margin(1e-12));

    // mapping back to the original coordinates preserves the objective
    Vector x = unwhiten_direction(ctx, rep.x_star);
    x.normalize();
    CHECK(f_srq(ex.instance, x) == Catch::Approx(rep.f_star).margin(1e-9));
  }
}
