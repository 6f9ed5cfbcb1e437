#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "srq/examples.hpp"
#include "srq/spectral.hpp"

using namespace srq;

namespace {

Matrix random_symmetric(Index n, std::uint64_t seed, double range = 5.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-range, range);
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

// Largest real root of det(M - lambda I) for symmetric 3x3, via sign bracketing of the
// characteristic polynomial. Independent of the eigensolver backend.
double char_poly_max_root(const Matrix& m) {
  REQUIRE(m.rows() == 3);
  const double tr = m.trace();
  const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) +
                        m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                        m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const double det = m.determinant();
  auto p = [&](double x) { return ((x - tr) * x + minors) * x - det; };  // det(xI - M)
  double hi = 1.0 + m.cwiseAbs().rowwise().sum().maxCoeff();             // Gershgorin
  double lo = hi;
  // walk down until the polynomial changes sign; the largest root lies in [lo, hi]
  while (p(lo) > 0.0) lo -= 1e-3 * hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("extreme eigenpairs of simple matrices", "[spectral]") {
  Matrix m = Vector::Zero(3).asDiagonal();
  m.diagonal() << 5.0, 2.0, 3.0;
  const EigPair top = sym_eig_extreme(m, Extreme::max);
  CHECK(top.value == Catch::Approx(5.0).margin(1e-14));
  CHECK(std::abs(top.vector(0)) == Catch::Approx(1.0).margin(1e-12));

  const EigPair bottom = sym_eig_extreme(Matrix::Identity(4, 4), Extreme::min);
  CHECK(bottom.value == Catch::Approx(1.0).margin(1e-14));
  CHECK(bottom.vector.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("max eigenvalue agrees with the characteristic polynomial", "[spectral]") {
  const Matrix& d = builtin::all()[0].instance.D;
  const EigPair top = sym_eig_extreme(d, Extreme::max);
  CHECK(top.value == Catch::Approx(char_poly_max_root(d)).margin(1e-9));
}

TEST_CASE("eigenpair residuals and min/max symmetry", "[spectral]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix m = random_symmetric(6, seed);
    for (Extreme which : {Extreme::min, Extreme::max}) {
      const EigPair p = sym_eig_extreme(m, which);
      CHECK(std::abs(p.vector.norm() - 1.0) <= 1e-12);
      CHECK((m * p.vector - p.value * p.vector).norm() <= 1e-10 * (1.0 + max_abs(m)));
    }
    CHECK(sym_eig_extreme(m, Extreme::max).value ==
          Catch::Approx(-sym_eig_extreme(Matrix(-m), Extreme::min).value).margin(1e-12));
  }
}

TEST_CASE("pencil extremes on the built-in instances", "[spectral]") {
  auto range_of = [](const SrqInstance& inst) { return pencil_extremes(inst.B, inst.W); };
  const auto& exs = builtin::all();

  const auto [lo2, hi2] = range_of(exs[1].instance);
  CHECK(lo2 == Catch::Approx(0.2).margin(1e-12));
  CHECK(hi2 == Catch::Approx(4.5).margin(1e-12));

  const auto [lo4, hi4] = range_of(exs[3].instance);
  CHECK(lo4 == Catch::Approx(-1.0).margin(1e-9));
  CHECK(hi4 == Catch::Approx(10.0 / 3.0).margin(1e-9));
}

TEST_CASE("proportional pencil collapses to a point", "[spectral]") {
  const Matrix w = random_symmetric(4, 7).transpose() * random_symmetric(4, 7) +
                   4.0 * Matrix::Identity(4, 4);
  const auto [lo, hi] = pencil_extremes(Matrix(2.0 * w), w);
  CHECK(lo == Catch::Approx(2.0).margin(1e-10));
  CHECK(hi == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("diagonal pencils reduce to entry ratios", "[spectral]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ub(-10.0, 10.0), uw(0.5, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    Vector b(8), w(8);
    for (Index i = 0; i < 8; ++i) {
      b(i) = ub(rng);
      w(i) = uw(rng);
    }
    const Vector ratios = b.cwiseQuotient(w);
    const auto [lo, hi] = pencil_extremes(Matrix(b.asDiagonal()), Matrix(w.asDiagonal()));
    CHECK(lo == Catch::Approx(ratios.minCoeff()).margin(1e-12));
    CHECK(hi == Catch::Approx(ratios.maxCoeff()).margin(1e-12));
  }
}

TEST_CASE("pencil requires a definite W", "[spectral]") {
  Matrix w = Matrix::Identity(2, 2);
  w(1, 1) = -1.0;
  CHECK_THROWS_MATCHES(pencil_extremes(Matrix::Identity(2, 2), w), SrqError,
                       Catch::Matchers::Predicate<SrqError>([](const SrqError& e) {
                         return e.code() == ErrorCode::not_positive_definite;
                       }));
}

TEST_CASE("null-space quadratic maximization", "[spectral]") {
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << -21.5, 0.0, -11.5;
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 5.0, 2.0, 3.0;

  const EigPair p = nullspace_max_quadratic(m, d);
  CHECK(p.value == Catch::Approx(2.0).margin(1e-12));
  CHECK(std::abs(p.vector(1)) == Catch::Approx(1.0).margin(1e-10));

  const EigPair full = nullspace_max_quadratic(Matrix::Zero(3, 3), d);
  CHECK(full.value == Catch::Approx(5.0).margin(1e-12));

  CHECK_THROWS_MATCHES(nullspace_max_quadratic(Matrix(-Matrix::Identity(3, 3)), d), SrqError,
                       Catch::Matchers::Predicate<SrqError>([](const SrqError& e) {
                         return e.code() == ErrorCode::empty_nullspace;
                       }));
}
