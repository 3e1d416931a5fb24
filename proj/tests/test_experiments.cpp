#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ppaq/experiments.hpp"

using namespace ppaq;

TEST_CASE("plan defaults and validation") {
  ExperimentPlan p1 = ExperimentPlan::defaults(ExampleId::example1, 7);
  CHECK(p1.success_threshold == doctest::Approx(1e-6));
  CHECK(p1.master_seed == 7);
  CHECK(p1.N_values == std::vector<int>{2, 5, 10, 20});
  CHECK(p1.instances_per_cell == 50);
  CHECK_NOTHROW(p1.validate());

  ExperimentPlan p2 = ExperimentPlan::defaults(ExampleId::example2, 7);
  CHECK(p2.success_threshold == doctest::Approx(1e-3));

  p1.instances_per_cell = 0;
  CHECK_THROWS_AS(p1.validate(), std::invalid_argument);
  p2.N_values = {};
  CHECK_THROWS_AS(p2.validate(), std::invalid_argument);
}

TEST_CASE("instance generation: determinism, ranges, raw flag") {
  ExperimentPlan plan = ExperimentPlan::defaults(ExampleId::example1, 12345);
  plan.instances_per_cell = 5;
  auto a = generate_instances(plan, 10);
  auto b = generate_instances(plan, 10);
  REQUIRE(a.size() == 5);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x0 == b[i].x0);
    CHECK(a[i].params.a == b[i].params.a);
    CHECK(a[i].params.d == b[i].params.d);
    CHECK(a[i].params.N == 10);
    CHECK(a[i].params.raw_coords == false);
    for (double v : a[i].params.a) CHECK((v >= 0.0 && v <= 20.0));
    for (double v : a[i].params.b) CHECK((v >= -25.0 && v <= 25.0));
    for (double v : a[i].x0) CHECK((v >= -2.0 && v <= 2.0));
  }
  // different instances get different draws
  CHECK(a[0].x0 != a[1].x0);
  // a different master seed changes the draws
  plan.master_seed = 54321;
  auto c = generate_instances(plan, 10);
  CHECK(c[0].x0 != a[0].x0);

  plan.raw_trig_coords = true;
  auto d = generate_instances(plan, 10);
  CHECK(d[0].params.raw_coords == true);
}

TEST_CASE("finite median") {
  bool defined = false;
  CHECK(finite_median({3.0, 1.0, 2.0}, defined) == doctest::Approx(2.0));
  CHECK(defined);
  CHECK(finite_median({4.0, 1.0, 2.0, 3.0}, defined) == doctest::Approx(2.5));
  CHECK(defined);

  const double nan = std::nan("");
  // exactly half finite: still defined
  CHECK(finite_median({1.0, 2.0, nan, nan}, defined) == doctest::Approx(1.5));
  CHECK(defined);
  // fewer than half finite: undefined
  CHECK(std::isnan(finite_median({1.0, nan, nan}, defined)));
  CHECK(!defined);
  CHECK(std::isnan(finite_median({}, defined)));
  CHECK(!defined);
}

TEST_CASE("small cell run is consistent") {
  ExperimentPlan plan = ExperimentPlan::defaults(ExampleId::example1, 2024);
  plan.instances_per_cell = 3;
  CellReport cell = run_cell(plan, 2);
  CHECK(cell.N == 2);
  REQUIRE(cell.ppa_runs.size() == 3);
  REQUIRE(cell.ssn_runs.size() == 3);
  int ppa_succ = 0;
  for (const auto& r : cell.ppa_runs) {
    if (r.success) ++ppa_succ;
    CHECK(r.success == (std::isfinite(r.final_value) && r.final_value < plan.success_threshold));
    CHECK(r.iterations >= 0);
    CHECK(r.wall_seconds >= 0.0);
  }
  CHECK(cell.ppa_success == ppa_succ);
  CHECK(cell.ppa_median_defined);
  CHECK(cell.ppa_median >= 0.0);
}

namespace {

BatchReport tiny_report() {
  BatchReport rep;
  rep.example_id = ExampleId::example2;
  rep.master_seed = 99;
  rep.instances_per_cell = 2;
  rep.success_threshold = 1e-3;
  CellReport c;
  c.N = 5;
  c.ppa_success = 2;
  c.ppa_median = 1.25e-10;
  c.ppa_median_defined = true;
  c.ssn_success = 0;
  c.ssn_median_defined = false;
  c.ssn_median = std::nan("");
  RunRecord ok{1.25e-10, 12, TerminationReason::step_tol, true, 0.01};
  RunRecord bad{std::nan(""), 30000, TerminationReason::diverged, false, 0.02};
  c.ppa_runs = {ok, ok};
  c.ssn_runs = {bad, bad};
  rep.cells.push_back(c);
  return rep;
}

}  // namespace

TEST_CASE("table formatting") {
  BatchReport rep = tiny_report();
  const std::string text = format_table_text(rep);
  CHECK(text.find("PPA") != std::string::npos);
  CHECK(text.find("SSN") != std::string::npos);
  CHECK(text.find("N=5") != std::string::npos);
  CHECK(text.find("2 / 1.25e-10") != std::string::npos);
  CHECK(text.find("0 / NaN") != std::string::npos);

  const std::string csv = format_table_csv(rep);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "solver,N,successes,median");
  std::getline(in, line);
  CHECK(line.rfind("PPA,5,2,1.25", 0) == 0);  // full precision, not %f-rounded
  std::getline(in, line);
  CHECK(line.rfind("SSN,5,0,NaN", 0) == 0);
}

TEST_CASE("report JSON") {
  nlohmann::json j = report_json(tiny_report());
  CHECK(j["schema_version"] == 1);
  CHECK(j["family"] == 2);
  CHECK(j["master_seed"] == 99);
  REQUIRE(j["cells"].size() == 1);
  const auto& cell = j["cells"][0];
  CHECK(cell["N"] == 5);
  CHECK(cell["ppa"]["successes"] == 2);
  CHECK(cell["ppa"]["median"] == doctest::Approx(1.25e-10));
  CHECK(cell["ssn"]["median"].is_null());
  REQUIRE(cell["ssn"]["finals"].size() == 2);
  CHECK(cell["ssn"]["finals"][0].is_null());
}

TEST_CASE("trace emission") {
  ExperimentPlan plan = ExperimentPlan::defaults(ExampleId::example2, 77);
  plan.instances_per_cell = 1;
  plan.N_values = {2};
  const std::string dir = "exp_trace_test";
  std::remove((dir + "/ex2_N2_ppa.csv").c_str());
  std::remove((dir + "/ex2_N2_ssn.csv").c_str());
  const int rc = std::system(("mkdir -p " + dir).c_str());
  REQUIRE(rc == 0);
  emit_traces(plan, dir);
  for (const char* name : {"/ex2_N2_ppa.csv", "/ex2_N2_ssn.csv"}) {
    std::ifstream in(dir + name);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,h,norm_x");
    std::string row;
    CHECK(std::getline(in, row).good());  // at least the starting point
  }
}
