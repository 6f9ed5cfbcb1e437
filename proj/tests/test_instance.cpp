#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "srq/examples.hpp"
#include "srq/instance.hpp"

using namespace srq;

namespace {

bool throws_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const SrqError& e) {
    return e.code() == code;
  }
  return false;
}

Vector random_unit(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = g(rng);
  return x / x.norm();
}

}  // namespace

TEST_CASE("validate accepts well-formed data and symmetrizes noise", "[instance]") {
  CHECK_NOTHROW(validate(Matrix::Identity(2, 2), Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                         Matrix::Identity(2, 2)));
  CHECK_NOTHROW(builtin::all()[1].instance);

  Matrix b = Matrix::Identity(3, 3);
  b(0, 1) = 1.0;
  b(1, 0) = 1.0 + 1e-12;
  const SrqInstance inst = validate(b, Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  CHECK(inst.B(0, 1) == inst.B(1, 0));
}

TEST_CASE("validate rejects malformed data", "[instance]") {
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix i3 = Matrix::Identity(3, 3);

  CHECK(throws_code(ErrorCode::dimension_mismatch, [&] { validate(i2, i3, i2, i2); }));

  Matrix asym = i2;
  asym(0, 1) = 0.5;  // far beyond the symmetry tolerance
  CHECK(throws_code(ErrorCode::not_symmetric, [&] { validate(asym, i2, i2, i2); }));

  Matrix indefinite = i2;
  indefinite(1, 1) = -1.0;
  CHECK(throws_code(ErrorCode::not_positive_definite, [&] { validate(i2, indefinite, i2, i2); }));
  CHECK(throws_code(ErrorCode::not_positive_definite, [&] { validate(i2, i2, i2, indefinite); }));
}

TEST_CASE("objective evaluation on the built-in instances", "[instance]") {
  const auto& exs = builtin::all();

  Vector e2 = Vector::Zero(3);
  e2(1) = 1.0;
  CHECK(f_srq(exs[1].instance, e2) == Catch::Approx(6.5).margin(1e-14));

  Vector e9 = Vector::Zero(10);
  e9(8) = 1.0;
  CHECK(f_srq(exs[3].instance, e9) == Catch::Approx(31.0).margin(1e-12));

  CHECK(throws_code(ErrorCode::zero_vector, [&] { f_srq(exs[1].instance, Vector::Zero(3)); }));
}

TEST_CASE("objective is invariant under rescaling", "[instance]") {
  std::mt19937_64 rng(11);
  const SrqInstance inst = generate_random({5, 1.0, 77, 10.0});
  for (int trial = 0; trial < 10; ++trial) {
    const Vector x = random_unit(5, rng);
    const double base = f_srq(inst, x);
    for (double c : {-1.0, 1e-6, 1e6}) {
      CHECK(f_srq(inst, Vector(c * x)) == Catch::Approx(base).margin(1e-9 * (1.0 + std::abs(base))));
    }
  }
}

TEST_CASE("f_sphere requires a unit vector", "[instance]") {
  const SphereContext ctx = whiten(builtin::all()[1].instance);
  Vector x = Vector::Zero(3);
  x(0) = 1.1;
  CHECK(throws_code(ErrorCode::not_unit_norm, [&] { f_sphere(ctx, x); }));
}

TEST_CASE("whitening with identity V changes nothing", "[instance]") {
  const SrqInstance inst = builtin::all()[2].instance;
  const SphereContext ctx = whiten(inst);
  CHECK(max_abs(ctx.B - inst.B) <= 1e-12);
  CHECK(max_abs(ctx.W - inst.W) <= 1e-12);
  CHECK(max_abs(ctx.D - inst.D) <= 1e-12);
}

TEST_CASE("whitening applies the expected congruence", "[instance]") {
  const Matrix i3 = Matrix::Identity(3, 3);
  const SrqInstance inst = validate(i3, i3, i3, Matrix(4.0 * i3));
  const SphereContext ctx = whiten(inst);
  CHECK(max_abs(ctx.D - 0.25 * i3) <= 1e-12);
}

TEST_CASE("whitening preserves objective values", "[instance]") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SrqInstance inst = generate_random({5, 1.0, seed, 10.0});
    const SphereContext ctx = whiten(inst);
    for (int trial = 0; trial < 100; ++trial) {
      const Vector y = random_unit(5, rng);
      const Vector x = unwhiten_direction(ctx, y);
      CHECK(std::abs(f_srq(inst, x) - f_sphere(ctx, y)) <=
            1e-10 * (1.0 + std::abs(f_sphere(ctx, y))));
    }
  }
}

TEST_CASE("sphere context satisfies its pencil invariants", "[instance]") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SrqInstance inst = generate_random({6, 1.0, seed, 10.0});
    const SphereContext ctx = whiten(inst);
    CHECK(ctx.lam_min_w > 0.0);
    CHECK(ctx.lam_min_w <= ctx.lam_max_w);
    CHECK(ctx.mu_lo <= ctx.mu_hi);
    const double scale = 1.0 + max_abs(ctx.B) + std::abs(ctx.mu_hi) * max_abs(ctx.W);
    CHECK(sym_eigenvalues(ctx.B - ctx.mu_hi * ctx.W).maxCoeff() <= 1e-9 * scale);
    CHECK(sym_eigenvalues(ctx.B - ctx.mu_lo * ctx.W).minCoeff() >= -1e-9 * scale);
  }
}

TEST_CASE("random generation is deterministic and well-formed", "[instance]") {
  const GeneratorSpec spec{3, 1.0, 42, 10.0};
  const SrqInstance a = generate_random(spec);
  const SrqInstance b = generate_random(spec);
  CHECK(max_abs(a.B - b.B) == 0.0);
  CHECK(max_abs(a.W - b.W) == 0.0);
  CHECK(max_abs(a.D - b.D) == 0.0);
  CHECK(max_abs(a.V - b.V) == 0.0);
}

TEST_CASE("random instances respect the generator contract", "[instance]") {
  const SrqInstance inst = generate_random({30, 1.0, 9, 10.0});
  CHECK(max_abs(inst.B) <= 10.0);
  CHECK(max_abs(inst.D) <= 10.0);
  // W, V come from a lower bidiagonal factor, hence are tridiagonal and comfortably definite
  for (Index i = 0; i < inst.n; ++i) {
    for (Index j = 0; j < inst.n; ++j) {
      if (std::abs(i - j) > 1) {
        CHECK(inst.W(i, j) == 0.0);
        CHECK(inst.V(i, j) == 0.0);
      }
    }
  }
  CHECK(sym_eigenvalues(inst.W).minCoeff() >= 1.0 - 1e-9);
  CHECK(sym_eigenvalues(inst.V).minCoeff() >= 1.0 - 1e-9);
  CHECK_NOTHROW(validate(inst.B, inst.W, inst.D, inst.V));
}

TEST_CASE("generator rejects bad specs", "[instance]") {
  CHECK(throws_code(ErrorCode::precondition_violation, [] { generate_random({1, 1.0, 0, 10.0}); }));
  CHECK(throws_code(ErrorCode::precondition_violation, [] { generate_random({4, 0.0, 0, 10.0}); }));
}
