#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ppaq/functions.hpp"
#include "ppaq/prox.hpp"
#include "ppaq/rng.hpp"

using namespace ppaq;

TEST_CASE("config validation") {
  ProxConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.beta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ProxConfig{};
  cfg.armijo_c = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("subsolver on a quadratic: one Newton step") {
  ObjectiveSpec f = make_quadratic(1);
  ProxConfig cfg;
  cfg.beta = 1.0;
  SsnSubsolveResult r = ssn_subsolve(f, Vector{4.0}, Vector{4.0}, cfg);
  CHECK(r.converged);
  CHECK(r.iterations <= 2);  // linear residual: exact after one step
  CHECK(r.x[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("subsolver on sqrt(|x|): interior root and fallback") {
  ObjectiveSpec f = make_sqrt_abs();
  ProxConfig cfg;
  cfg.beta = 1.0;

  SsnSubsolveResult good = ssn_subsolve(f, Vector{1.5}, Vector{1.2}, cfg);
  CHECK(good.converged);
  CHECK(good.residual_norm <= 1e-7);
  // stationarity: 0.5 x^{-1/2} = 1.5 - x, satisfied at x = 1
  CHECK(good.x[0] == doctest::Approx(1.0).epsilon(1e-7));

  // from deep inside the cusp region the solver must either give up or land
  // on a genuine root of the stationarity equation 0.5 x^{-1/2} = 1.5 - x
  // (the subproblem has one at x ~ 0.13397, a local max, and one at x = 1)
  SsnSubsolveResult stuck = ssn_subsolve(f, Vector{1.5}, Vector{0.01}, cfg);
  if (stuck.converged) {
    const double x = stuck.x[0];
    REQUIRE(x > 0.0);
    CHECK(std::abs(0.5 / std::sqrt(x) - (1.5 - x)) <= 1e-6);
  }
}

TEST_CASE("prox of sqrt(|x|) on [-2,2] at z=1.5 is the pair {0,1}") {
  ObjectiveSpec f = make_sqrt_abs();
  f.box = BoxConstraint::cube(1, -2.0, 2.0);
  ProxConfig cfg;
  cfg.beta = 1.0;
  ProxResult res = prox(f, Vector{1.5}, cfg);
  REQUIRE(res.minimizers.size() == 2);
  CHECK(std::abs(res.minimizers[0].point[0] - 0.0) <= 1e-6);
  CHECK(std::abs(res.minimizers[1].point[0] - 1.0) <= 1e-6);
  CHECK(res.minimizers[0].objective_value == doctest::Approx(1.125).epsilon(1e-9));
  CHECK(res.minimizers[1].objective_value == doctest::Approx(1.125).epsilon(1e-9));
  CHECK(res.converged);
}

TEST_CASE("prox of a quadratic") {
  ObjectiveSpec f = make_quadratic(1);
  ProxConfig cfg;
  cfg.beta = 0.5;
  ProxResult res = prox(f, Vector{2.0}, cfg);
  REQUIRE(res.minimizers.size() == 1);
  CHECK(res.minimizers[0].point[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("fixed points and descent") {
  Rng rng(99);
  ProxConfig cfg;
  for (ObjectiveSpec f : {make_quadratic(2), make_euclid_power(2, 1.5), make_lp_quasinorm(2, 0.5)}) {
    // z = xbar = 0 stays put
    ProxResult at_min = prox(f, Vector{0.0, 0.0}, cfg);
    bool contains_origin = false;
    for (const auto& m : at_min.minimizers) {
      if (norm(m.point) <= 1e-7) contains_origin = true;
    }
    CHECK(contains_origin);

    // descent inequality h(x*) + (1/2b)||x*-z||^2 <= h(z) and strict progress
    for (int i = 0; i < 20; ++i) {
      Vector z = rng.uniform_vec(2, -2.0, 2.0);
      if (norm(z) < 1e-3) continue;
      ProxResult res = prox(f, z, cfg);
      REQUIRE(!res.minimizers.empty());
      const double hz = f.value_at(z);
      for (const auto& m : res.minimizers) {
        CHECK(m.objective_value <= hz + 1e-9 * (1.0 + std::abs(hz)));
        CHECK(f.value_at(m.point) < hz);
      }
    }
  }
}

TEST_CASE("strong quasar prox inequality on a quadratic") {
  // h(x) = ||x||^2 is (1,2)-strongly quasar-convex at 0; Prop-style bound:
  // h(x*) - h(xbar) <= (1/(k b))<x*-z, xbar-x*> - (g/2)||x*-xbar||^2 + tol
  ObjectiveSpec f = make_quadratic(2);
  ProxConfig cfg;
  cfg.beta = 0.25;
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    Vector z = rng.uniform_vec(2, -3.0, 3.0);
    ProxResult res = prox(f, z, cfg);
    REQUIRE(!res.minimizers.empty());
    const Vector& xs = res.minimizers[0].point;
    const double lhs = f.value_at(xs);
    const double rhs = dot(sub(xs, z), scale(-1.0, xs)) / cfg.beta - dot(xs, xs);
    CHECK(lhs <= rhs + 1e-7);
  }
}

TEST_CASE("grid oracle") {
  ObjectiveSpec f = make_sqrt_abs();
  BoxConstraint box = BoxConstraint::cube(1, -2.0, 2.0);
  auto pts = prox_oracle_grid(f, Vector{1.5}, 1.0, box, 1000001);
  REQUIRE(pts.size() == 2);
  CHECK(std::min(std::abs(pts[0][0]), std::abs(pts[1][0])) <= 1e-5);
  CHECK(std::abs(std::max(std::abs(pts[0][0]), std::abs(pts[1][0])) - 1.0) <= 1e-5);

  ObjectiveSpec q = make_quadratic(1);
  auto qpts = prox_oracle_grid(q, Vector{3.0}, 1.0, box, 100001);
  REQUIRE(qpts.size() == 1);
  CHECK(qpts[0][0] == doctest::Approx(1.0).epsilon(1e-4));

  CHECK_THROWS_AS(prox_oracle_grid(q, Vector{3.0}, 1.0,
                                   BoxConstraint(Vector{-kInf}, Vector{kInf}), 1000),
                  std::invalid_argument);
}

TEST_CASE("grid oracle agrees with prox on a random 2-D instance") {
  Rng rng(42);
  RandomFamilyParams p = RandomFamilyParams::draw_example1(3, 1.0, 2.0, 2, 42, rng);
  ObjectiveSpec f = make_example1(p);
  const Vector z{0.3, -0.2};
  ProxConfig cfg;
  cfg.beta = 0.05;
  ProxResult res = prox(f, z, cfg);
  REQUIRE(!res.minimizers.empty());

  BoxConstraint box = BoxConstraint::cube(2, -1.5, 1.5);
  auto pts = prox_oracle_grid(f, z, 0.05, box, 601, 4);
  REQUIRE(!pts.empty());
  double best_gap = kInf;
  for (const auto& gp : pts) best_gap = std::min(best_gap, dist(gp, res.minimizers[0].point));
  CHECK(best_gap <= 2.0 * 3.0 / 600.0);  // within 2 cells of the coarse grid
  const double oracle_val = prox_objective(f, pts.front(), z, 0.05);
  CHECK(std::abs(oracle_val - res.minimizers[0].objective_value) <= 1e-4);
}

TEST_CASE("minimizer on a kink is certified without a residual root") {
  // h(x) = max{x^2, 2x^2 - 2} has a V-kink at |x| = sqrt(2). With beta = 0.5
  // and z = 3.5 both branch stationary points fall outside their own branch,
  // so the subproblem minimizer is exactly the kink point: the one-sided
  // slopes bracket zero but no single Clarke element has a residual root.
  ObjectiveSpec f;
  f.dim = 1;
  f.name = "two_branch";
  f.value_at = [](const Vector& x) { return std::max(x[0] * x[0], 2.0 * x[0] * x[0] - 2.0); };
  f.clarke_element_at = [](const Vector& x) {
    return Vector{x[0] * x[0] >= 2.0 ? 4.0 * x[0] : 2.0 * x[0]};
  };
  f.clarke_jacobian_at = [](const Vector& x) {
    Matrix V(1);
    V(0, 0) = x[0] * x[0] >= 2.0 ? 4.0 : 2.0;
    return V;
  };

  ProxConfig cfg;
  cfg.beta = 0.5;
  ProxResult res = prox(f, Vector{3.5}, cfg);
  CHECK(res.converged);
  REQUIRE(!res.minimizers.empty());
  const double xs = res.minimizers.front().point[0];
  CHECK(xs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
  // the residual there genuinely has no root: both one-sided values are away
  // from zero with opposite signs
  CHECK(res.minimizers.front().residual_norm > 0.1);
}

TEST_CASE("determinism") {
  ObjectiveSpec f = make_euclid_power(2, 1.2);
  ProxConfig cfg;
  cfg.seed = 1234;
  ProxResult a = prox(f, Vector{0.7, -0.9}, cfg);
  ProxResult b = prox(f, Vector{0.7, -0.9}, cfg);
  REQUIRE(a.minimizers.size() == b.minimizers.size());
  for (size_t i = 0; i < a.minimizers.size(); ++i) {
    CHECK(a.minimizers[i].point == b.minimizers[i].point);
    CHECK(a.minimizers[i].objective_value == b.minimizers[i].objective_value);
  }
}
