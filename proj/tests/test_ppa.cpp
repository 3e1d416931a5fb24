#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "ppaq/functions.hpp"
#include "ppaq/ppa.hpp"
#include "ppaq/rng.hpp"

using namespace ppaq;

namespace {

PpaConfig quadratic_cfg(double beta) {
  PpaConfig cfg;
  cfg.beta_schedule = [beta](int) { return beta; };
  cfg.beta_lower = beta;
  cfg.prox_cfg.beta = beta;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  PpaConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.outer_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  PpaConfig band = quadratic_cfg(0.05);
  band.beta_lower = 0.1;  // schedule (0.05) falls below beta_lower
  CHECK_THROWS_AS(band.validate(), std::invalid_argument);
}

TEST_CASE("quadratic contraction at ratio 1/3") {
  ObjectiveSpec f = make_quadratic(1);
  PpaConfig cfg = quadratic_cfg(1.0);
  cfg.ref_point = Vector{0.0};
  SolverTrace trace = run_ppa(f, Vector{1.0}, cfg);
  CHECK(trace.terminated_by == TerminationReason::step_tol);
  CHECK(std::abs(trace.final_point()[0]) <= 1e-9);
  REQUIRE(trace.steps() >= 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(trace.iterates[k + 1][0] ==
          doctest::Approx(trace.iterates[k][0] / 3.0).epsilon(1e-8));
  }
  // values strictly decrease
  for (size_t k = 0; k + 1 < trace.values.size(); ++k) {
    CHECK(trace.values[k + 1] < trace.values[k] + 1e-15);
  }
  REQUIRE(trace.distances_to_ref.has_value());
  CHECK(trace.distances_to_ref->size() == trace.iterates.size());
}

TEST_CASE("fixed point at the minimizer") {
  ObjectiveSpec f = make_quadratic(2);
  PpaConfig cfg = quadratic_cfg(0.05);
  SolverTrace trace = run_ppa(f, Vector{0.0, 0.0}, cfg);
  CHECK(trace.terminated_by == TerminationReason::fixed_point);
  CHECK(trace.iterates.size() == 1);
  CHECK(trace.steps() == 0);
}

TEST_CASE("select_iterate tie-break") {
  ProxResult tied;
  tied.converged = true;
  tied.minimizers.push_back({Vector{0.0}, 1.125, 0.0});
  tied.minimizers.push_back({Vector{1.0}, 1.125, 0.0});
  CHECK(select_iterate(tied)[0] == doctest::Approx(0.0));

  ProxResult single;
  single.minimizers.push_back({Vector{2.0}, 0.5, 0.0});
  CHECK(select_iterate(single)[0] == doctest::Approx(2.0));

  CHECK_THROWS_AS(select_iterate(ProxResult{}), std::logic_error);
}

TEST_CASE("random family instance run: monotone, small final value") {
  Rng rng(6);
  RandomFamilyParams p = RandomFamilyParams::draw_example1(2, 1.0, 2.0, 2, 6, rng);
  ObjectiveSpec f = make_example1(p);
  PpaConfig cfg;  // defaults: beta 0.05, tol 1e-9
  cfg.ref_point = Vector{0.0, 0.0};
  Vector x0 = rng.uniform_vec(2, -2.0, 2.0);
  SolverTrace trace = run_ppa(f, x0, cfg);
  CHECK((trace.terminated_by == TerminationReason::step_tol ||
         trace.terminated_by == TerminationReason::fixed_point));
  CHECK(trace.final_value() <= 1e-8);
  for (size_t k = 0; k + 1 < trace.values.size(); ++k) {
    CHECK(trace.values[k + 1] <= trace.values[k] + 1e-9);
  }
  // linear rate on the distance tail (kappa=1, gamma=2q1, beta'=0.05)
  const auto& d = *trace.distances_to_ref;
  const double rate = 1.0 / std::sqrt(1.0 + 0.05 * 2.0 + 0.05 * 2.0);
  size_t start = d.size() / 5;
  for (size_t k = start; k + 1 < d.size(); ++k) {
    if (d[k] <= 1e-12) continue;
    CHECK(d[k + 1] <= (rate + 1e-6) * d[k]);
  }
}

TEST_CASE("trace CSV") {
  ObjectiveSpec f = make_quadratic(1);
  PpaConfig cfg = quadratic_cfg(1.0);
  cfg.ref_point = Vector{0.0};
  SolverTrace trace = run_ppa(f, Vector{1.0}, cfg);
  std::ostringstream out;
  write_trace_csv(trace, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,h,step,dist,inner_iters");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == static_cast<int>(trace.iterates.size()));
}

TEST_CASE("determinism") {
  Rng rng(9);
  RandomFamilyParams p = RandomFamilyParams::draw_example2(3, 2.0, 2, 9, rng);
  ObjectiveSpec f = make_example2(p);
  Vector x0 = rng.uniform_vec(2, -2.0, 2.0);
  PpaConfig cfg;
  SolverTrace a = run_ppa(f, x0, cfg);
  SolverTrace b = run_ppa(f, x0, cfg);
  REQUIRE(a.iterates.size() == b.iterates.size());
  CHECK(a.final_point() == b.final_point());
  CHECK(a.terminated_by == b.terminated_by);
}
