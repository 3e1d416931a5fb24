#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ppaq/checker.hpp"
#include "ppaq/functions.hpp"
#include "ppaq/ppa.hpp"

using namespace ppaq;

TEST_CASE("quasar inequality: clean certificates") {
  // convex quadratic: kappa=1, gamma = 2 (its strong-convexity modulus)
  ObjectiveSpec quad = make_quadratic(2);
  QuasarCertificate cq{1.0, 2.0, Vector{0.0, 0.0}};
  auto s1 = make_ball_sampler(quad, Vector{0.0, 0.0}, 3.0);
  CHECK(check_quasar_inequality(quad, cq, s1, 10000, 1).clean());

  // lp regularizer (p-homogeneous), p = 0.5: kappa-quasar-convex for kappa < p
  ObjectiveSpec lp = make_lp_regularizer(2, 0.5);
  QuasarCertificate cl{0.4, 0.0, Vector{0.0, 0.0}};
  auto s2 = make_ball_sampler(lp, Vector{0.0, 0.0}, 1.0);
  CHECK(check_quasar_inequality(lp, cl, s2, 10000, 2).clean());

  // the 1-homogeneous quasinorm admits every kappa <= 1 (along rays to 0 the
  // inequality reduces to 1-lambda <= 1-kappa*lambda)
  ObjectiveSpec lpq = make_lp_quasinorm(2, 0.5);
  QuasarCertificate cq9{0.9, 0.0, Vector{0.0, 0.0}};
  CHECK(check_quasar_inequality(lpq, cq9, s2, 10000, 11).clean());
}

TEST_CASE("quasar inequality: witness beyond the valid kappa range") {
  ObjectiveSpec lp = make_lp_regularizer(2, 0.5);
  QuasarCertificate bad{0.9, 0.0, Vector{0.0, 0.0}};
  auto s = make_ball_sampler(lp, Vector{0.0, 0.0}, 1.0);
  ViolationReport rep = check_quasar_inequality(lp, bad, s, 20000, 3);
  CHECK(rep.n_violations > 0);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.worst_margin < 0.0);
  // replay the witness: the inequality really fails there
  const auto& [x, lambda] = *rep.witness;
  const double lhs = lp.value_at(axpy(scale(1.0 - lambda, x), lambda, bad.xbar));
  const double rhs = 0.9 * lambda * 0.0 + (1.0 - 0.9 * lambda) * lp.value_at(x);
  CHECK(lhs > rhs);
}

TEST_CASE("quadratic growth") {
  ObjectiveSpec quad = make_quadratic(2);
  auto s = make_ball_sampler(quad, Vector{0.0, 0.0}, 3.0);
  QuasarCertificate exact{1.0, 2.0, Vector{0.0, 0.0}};  // modulus exactly 1
  CHECK(check_quadratic_growth(quad, exact, s, 10000, 4).clean());
  QuasarCertificate inflated{1.0, 20.0, Vector{0.0, 0.0}};
  ViolationReport rep = check_quadratic_growth(quad, inflated, s, 10000, 5);
  CHECK(rep.n_violations > 0);
  CHECK(rep.witness.has_value());
}

TEST_CASE("differentiable characterization") {
  ObjectiveSpec pw = make_euclid_power(2, 2.0);  // ||x||^2, smooth
  QuasarCertificate cert{1.0, 2.0, Vector{0.0, 0.0}};
  auto s = make_ball_sampler(pw, Vector{0.0, 0.0}, 2.0);
  ViolationReport rep = check_diff_characterization(pw, cert, s, 2000, 6);
  CHECK(rep.n_samples > 1500);  // few skips
  CHECK(rep.clean());
}

TEST_CASE("supercoercivity probe") {
  ObjectiveSpec quad = make_quadratic(2);
  CHECK(check_supercoercive(quad, {1.0, 10.0, 100.0}, 200, 7) == doctest::Approx(1.0));
  ObjectiveSpec lin = make_euclid_power(2, 1.0);  // ||x||: ratio decays to 0
  CHECK(check_supercoercive(lin, {1.0, 10.0, 100.0}, 200, 8) <= 0.011);
  CHECK_THROWS_AS(check_supercoercive(quad, {2.0, 1.0}, 10, 9), std::invalid_argument);
}

TEST_CASE("theoretical rate") {
  CHECK(theoretical_rate(1.0, 2.0, 1.0) == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(theoretical_rate(1.0, 1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(theoretical_rate(0.5, 2.0, 1.0) == doctest::Approx(1.0 / std::sqrt(7.0 / 3.0)));
  CHECK_THROWS_AS(theoretical_rate(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(theoretical_rate(1.5, 1.0, 1.0), std::invalid_argument);

  // strictly decreasing in the composite k*b*g
  double prev = 1.0;
  for (double q : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double r = theoretical_rate(1.0, q, 1.0);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("iteration bounds") {
  CHECK(iteration_bound_strong(1e-3, 1.0, 2.0, 1.0, 1.0) == 9);
  CHECK(iteration_bound_strong(1e-6, 1.0, 1.0, 1.0, 1.0) == 26);
  CHECK(iteration_bound_strong(1e-3, 1.0, 2.0, 1.0, 1e-4) == 0);  // dist0 <= eps

  CHECK(iteration_bound_quasar(1e-2, QuasarBoundKind::value, 0.05, 0.05, 1.0, 1.0) == 1000);
  CHECK(iteration_bound_quasar(1e-2, QuasarBoundKind::step, 0.05, 0.05, 1.0, 1.0) == 1000);
  CHECK(iteration_bound_quasar(1e-2, QuasarBoundKind::value, 0.05, 0.05, 1.0, 0.0) == 0);

  auto [unsq, sq] = iteration_bound_strong_value_readings(1e-3, 1.0, 2.0, 1.0, 0.5);
  CHECK(unsq >= 1);
  CHECK(sq >= 1);
  CHECK(sq <= unsq);  // squared reading is smaller for dist0 < 1
}

TEST_CASE("trace checks on a quadratic PPA run") {
  ObjectiveSpec f = make_quadratic(1);
  PpaConfig cfg;
  cfg.beta_schedule = [](int) { return 1.0; };
  cfg.beta_lower = 1.0;
  cfg.prox_cfg.beta = 1.0;
  cfg.ref_point = Vector{0.0};
  SolverTrace trace = run_ppa(f, Vector{1.0}, cfg);
  QuasarCertificate cert{1.0, 2.0, Vector{0.0}};

  CHECK(check_trace_linear(f, trace, cert, 1.0).clean());
  CHECK(check_trace_sublinear(f, trace, cert, 1.0).clean());

  // bound observed convergence index by the calculator's prediction
  const auto& d = *trace.distances_to_ref;
  const double eps = 1e-3;
  long first = 0;
  while (first < static_cast<long>(d.size()) && d[first] > eps) ++first;
  CHECK(first <= iteration_bound_strong(eps, 1.0, 2.0, 1.0, d[0]));

  // negative control: gamma inflated x100 demands an impossible rate
  QuasarCertificate inflated{1.0, 200.0, Vector{0.0}};
  CHECK(check_trace_linear(f, trace, inflated, 1.0).n_violations > 0);
}

TEST_CASE("fabricated non-monotone distances are flagged") {
  SolverTrace fake;
  fake.iterates = {Vector{1.0}, Vector{0.5}, Vector{0.8}};
  fake.values = {1.0, 0.25, 0.64};
  fake.step_norms = {0.5, 0.3};
  ObjectiveSpec f = make_quadratic(1);
  QuasarCertificate cert{1.0, 0.0, Vector{0.0}};
  ViolationReport rep = check_trace_sublinear(f, fake, cert, 0.05);
  CHECK(rep.n_violations > 0);  // distance rises from 0.5 to 0.8

  SolverTrace single;
  single.iterates = {Vector{1.0}};
  single.values = {1.0};
  CHECK(check_trace_sublinear(f, single, cert, 0.05).clean());  // vacuous
}

TEST_CASE("report serialization and merge") {
  ViolationReport a;
  a.note(Vector{1.0}, 0.5, 1.0);
  a.note(Vector{2.0}, 0.25, -0.5);
  ViolationReport b;
  b.note(Vector{3.0}, 0.1, -2.0);
  a.merge(b);
  CHECK(a.n_samples == 3);
  CHECK(a.n_violations == 2);
  CHECK(a.worst_margin == doctest::Approx(-2.0));
  nlohmann::json j = report_to_json("demo", a);
  CHECK(j["check"] == "demo");
  CHECK(j["n_violations"] == 2);
  CHECK(j["witness"]["x"][0] == doctest::Approx(3.0));
}

TEST_CASE("kappa bisection on the lp regularizer lands near p") {
  ObjectiveSpec lp = make_lp_regularizer(2, 0.5);
  auto s = make_ball_sampler(lp, Vector{0.0, 0.0}, 1.0);
  const double kmax = bisect_max_kappa(lp, Vector{0.0, 0.0}, 0.0, s, 3000, 10, 12);
  CHECK(kmax > 0.4);
  CHECK(kmax < 0.6);
}
