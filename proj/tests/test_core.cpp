#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ppaq/core.hpp"

using namespace ppaq;

TEST_CASE("vector helpers") {
  Vector a{1.0, 2.0}, b{3.0, -1.0};
  CHECK(dot(a, b) == doctest::Approx(1.0));
  CHECK(norm(Vector{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(norm_inf(Vector{-7.0, 2.0}) == doctest::Approx(7.0));
  CHECK(dist(a, b) == doctest::Approx(std::sqrt(4.0 + 9.0)));
  Vector c = axpy(a, 2.0, b);
  CHECK(c[0] == doctest::Approx(7.0));
  CHECK(c[1] == doctest::Approx(0.0));
  CHECK(sub(add(a, b), b)[0] == doctest::Approx(a[0]));
  CHECK(scale(-2.0, a)[1] == doctest::Approx(-4.0));
}

TEST_CASE("finiteness guards") {
  CHECK(all_finite(Vector{0.0, 1.0}));
  CHECK_FALSE(all_finite(Vector{0.0, kInf}));
  CHECK_THROWS_AS(require_finite(Vector{std::nan("")}, "x"), std::invalid_argument);
}

TEST_CASE("linear solve") {
  Matrix A(2);
  A(0, 0) = 2.0; A(0, 1) = 1.0;
  A(1, 0) = 1.0; A(1, 1) = 3.0;
  Vector x;
  REQUIRE(solve_linear(A, Vector{5.0, 10.0}, x));
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(3.0));

  Matrix S(2);  // rank one
  S(0, 0) = 1.0; S(0, 1) = 2.0;
  S(1, 0) = 2.0; S(1, 1) = 4.0;
  CHECK_FALSE(solve_linear(S, Vector{1.0, 1.0}, x));

  Matrix I = Matrix::identity(3);
  Vector y = matvec(I, Vector{1.0, 2.0, 3.0});
  CHECK(y[2] == doctest::Approx(3.0));
}

TEST_CASE("box constraints") {
  BoxConstraint box = BoxConstraint::cube(2, -1.0, 2.0);
  CHECK(box.bounded());
  CHECK(box.contains(Vector{0.0, 0.0}));
  CHECK_FALSE(box.contains(Vector{3.0, 0.0}));
  Vector p = project_box(Vector{3.0, -5.0}, box);
  CHECK(p[0] == doctest::Approx(2.0));
  CHECK(p[1] == doctest::Approx(-1.0));

  BoxConstraint orthant = BoxConstraint::nonneg(2);
  CHECK_FALSE(orthant.bounded());
  CHECK(orthant.contains(Vector{0.0, 5.0}));
  CHECK_FALSE(orthant.contains(Vector{-1e-9, 0.0}));
}

TEST_CASE("certificate validation") {
  QuasarCertificate ok{0.5, 1.0, Vector{0.0}};
  CHECK_NOTHROW(ok.validate());
  QuasarCertificate bad_kappa{1.5, 0.0, Vector{0.0}};
  CHECK_THROWS_AS(bad_kappa.validate(), std::invalid_argument);
  QuasarCertificate bad_gamma{0.5, -1.0, Vector{0.0}};
  CHECK_THROWS_AS(bad_gamma.validate(), std::invalid_argument);
}

TEST_CASE("finite difference gradient") {
  ObjectiveSpec f;
  f.dim = 2;
  f.value_at = [](const Vector& x) { return x[0] * x[0] + 3.0 * x[1] * x[1]; };
  Vector g = finite_diff_gradient(f, Vector{1.0, -2.0}, 1e-6);
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(-12.0).epsilon(1e-6));

  f.box = BoxConstraint::nonneg(2);
  CHECK_THROWS_AS(finite_diff_gradient(f, Vector{0.0, 1.0}, 1e-6), std::domain_error);
}
