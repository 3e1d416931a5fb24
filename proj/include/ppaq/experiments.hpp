#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppaq/functions.hpp"
#include "ppaq/ppa.hpp"
#include "ppaq/ssn.hpp"

#include "json.hpp"

namespace ppaq {

struct ExperimentPlan {
  ExampleId example_id = ExampleId::example1;
  std::vector<int> N_values{2, 5, 10, 20};
  int instances_per_cell = 50;
  std::uint64_t master_seed = 0;
  /// Success cut on the final objective value: 1e-6 for family 1,
  /// 1e-3 for family 2 (the defaults() factory sets this).
  double success_threshold = 1e-6;
  PpaConfig ppa_cfg;
  SsnConfig ssn_cfg;
  // family shape parameters
  double q1 = 1.0, q2 = 2.0;  // family 1
  double q = 2.0;             // family 2
  int k = 2;
  /// Evaluate the trig layer at raw coordinates instead of x/||x||, so the
  /// two readings of the family definition can be compared.
  bool raw_trig_coords = false;

  static ExperimentPlan defaults(ExampleId id, std::uint64_t master_seed);
  void validate() const;
};

struct InstanceRecord {
  RandomFamilyParams params;
  Vector x0;
};

struct RunRecord {
  double final_value = 0.0;  // NaN when the run diverged
  int iterations = 0;
  TerminationReason terminated_by = TerminationReason::max_iter;
  bool success = false;
  double wall_seconds = 0.0;
};

struct CellReport {
  int N = 0;
  int ppa_success = 0, ssn_success = 0;
  /// Median of finite final values; undefined (NaN printed) when fewer than
  /// half the runs ended with a finite value.
  double ppa_median = 0.0, ssn_median = 0.0;
  bool ppa_median_defined = false, ssn_median_defined = false;
  std::vector<RunRecord> ppa_runs, ssn_runs;
};

struct BatchReport {
  ExampleId example_id = ExampleId::example1;
  std::uint64_t master_seed = 0;
  int instances_per_cell = 0;
  double success_threshold = 0.0;
  std::vector<CellReport> cells;
  double wall_seconds = 0.0;
};

/// Deterministic per-cell instance list: instance i of cell (example, N)
/// gets seed derive_seed(master_seed, tag(example, N), i); coefficients are
/// drawn first, then x0 uniform in [-2,2]^2, from the same stream.
std::vector<InstanceRecord> generate_instances(const ExperimentPlan& plan, int N);

CellReport run_cell(const ExperimentPlan& plan, int N);
BatchReport run_plan(const ExperimentPlan& plan);

/// "count / median" table, one row per solver, one column per N.
std::string format_table_text(const BatchReport& report);
std::string format_table_csv(const BatchReport& report);
nlohmann::json report_json(const BatchReport& report);

/// Writes per-iteration (k, h, ||x||) CSVs for the first instance of each
/// cell into `dir` (one file per solver per cell).
void emit_traces(const ExperimentPlan& plan, const std::string& dir);

/// Median of the finite entries; sets `defined` false (and returns NaN)
/// when fewer than half of all entries are finite.
double finite_median(const std::vector<double>& values, bool& defined);

}  // namespace ppaq
