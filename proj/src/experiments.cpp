#include "ppaq/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ppaq/rng.hpp"

namespace ppaq {

ExperimentPlan ExperimentPlan::defaults(ExampleId id, std::uint64_t master_seed) {
  ExperimentPlan plan;
  plan.example_id = id;
  plan.master_seed = master_seed;
  plan.success_threshold = id == ExampleId::example1 ? 1e-6 : 1e-3;
  return plan;
}

void ExperimentPlan::validate() const {
  if (N_values.empty()) throw std::invalid_argument("ExperimentPlan: N_values empty");
  for (int n : N_values) {
    if (n < 1) throw std::invalid_argument("ExperimentPlan: N values must be >= 1");
  }
  if (instances_per_cell < 1) {
    throw std::invalid_argument("ExperimentPlan: instances_per_cell must be >= 1");
  }
  if (!(success_threshold > 0.0)) {
    throw std::invalid_argument("ExperimentPlan: success_threshold must be > 0");
  }
  ppa_cfg.validate();
  ssn_cfg.validate();
}

namespace {

std::uint64_t cell_tag(ExampleId id, int N) {
  return (static_cast<std::uint64_t>(id) << 32) ^ static_cast<std::uint64_t>(N);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<InstanceRecord> generate_instances(const ExperimentPlan& plan, int N) {
  plan.validate();
  std::vector<InstanceRecord> out;
  out.reserve(static_cast<size_t>(plan.instances_per_cell));
  for (int i = 0; i < plan.instances_per_cell; ++i) {
    const std::uint64_t seed =
        derive_seed(plan.master_seed, cell_tag(plan.example_id, N), static_cast<std::uint64_t>(i));
    Rng rng(seed);
    InstanceRecord rec;
    rec.params = plan.example_id == ExampleId::example1
                     ? RandomFamilyParams::draw_example1(N, plan.q1, plan.q2, plan.k, seed, rng)
                     : RandomFamilyParams::draw_example2(N, plan.q, plan.k, seed, rng);
    rec.params.raw_coords = plan.raw_trig_coords;
    rec.x0 = rng.uniform_vec(2, -2.0, 2.0);
    out.push_back(std::move(rec));
  }
  return out;
}

double finite_median(const std::vector<double>& values, bool& defined) {
  std::vector<double> finite;
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (2 * finite.size() < values.size() || finite.empty()) {
    defined = false;
    return std::numeric_limits<double>::quiet_NaN();
  }
  defined = true;
  std::sort(finite.begin(), finite.end());
  const size_t m = finite.size();
  return m % 2 == 1 ? finite[m / 2] : 0.5 * (finite[m / 2 - 1] + finite[m / 2]);
}

CellReport run_cell(const ExperimentPlan& plan, int N) {
  CellReport cell;
  cell.N = N;
  std::vector<double> ppa_finals, ssn_finals;
  for (const InstanceRecord& rec : generate_instances(plan, N)) {
    const ObjectiveSpec f = make_example(rec.params);

    RunRecord pr;
    {
      auto t0 = std::chrono::steady_clock::now();
      SolverTrace trace = run_ppa(f, rec.x0, plan.ppa_cfg);
      pr.wall_seconds = elapsed_s(t0);
      pr.iterations = trace.steps();
      pr.terminated_by = trace.terminated_by;
      pr.final_value = trace.terminated_by == TerminationReason::diverged
                           ? std::numeric_limits<double>::quiet_NaN()
                           : trace.final_value();
      pr.success = std::isfinite(pr.final_value) && pr.final_value < plan.success_threshold;
    }
    cell.ppa_success += pr.success ? 1 : 0;
    ppa_finals.push_back(pr.final_value);
    cell.ppa_runs.push_back(pr);

    RunRecord sr;
    {
      auto t0 = std::chrono::steady_clock::now();
      SolverTrace trace = run_ssn(f, rec.x0, plan.ssn_cfg);
      sr.wall_seconds = elapsed_s(t0);
      sr.iterations = trace.steps();
      sr.terminated_by = trace.terminated_by;
      sr.final_value = trace.terminated_by == TerminationReason::diverged
                           ? std::numeric_limits<double>::quiet_NaN()
                           : trace.final_value();
      sr.success = std::isfinite(sr.final_value) && sr.final_value < plan.success_threshold;
    }
    cell.ssn_success += sr.success ? 1 : 0;
    ssn_finals.push_back(sr.final_value);
    cell.ssn_runs.push_back(sr);
  }
  cell.ppa_median = finite_median(ppa_finals, cell.ppa_median_defined);
  cell.ssn_median = finite_median(ssn_finals, cell.ssn_median_defined);
  return cell;
}

BatchReport run_plan(const ExperimentPlan& plan) {
  plan.validate();
  auto t0 = std::chrono::steady_clock::now();
  BatchReport report;
  report.example_id = plan.example_id;
  report.master_seed = plan.master_seed;
  report.instances_per_cell = plan.instances_per_cell;
  report.success_threshold = plan.success_threshold;
  for (int N : plan.N_values) report.cells.push_back(run_cell(plan, N));
  report.wall_seconds = elapsed_s(t0);
  return report;
}

namespace {

std::string cell_text(int successes, double median, bool defined) {
  std::ostringstream os;
  os << successes << " / ";
  if (defined) {
    os.setf(std::ios::scientific);
    os.precision(2);
    os << median;
  } else {
    os << "NaN";
  }
  return os.str();
}

}  // namespace

std::string format_table_text(const BatchReport& report) {
  std::ostringstream os;
  os << "family " << static_cast<int>(report.example_id) << ", " << report.instances_per_cell
     << " instances per cell, threshold " << report.success_threshold << ", seed "
     << report.master_seed << "\n";
  os << "solver";
  for (const auto& c : report.cells) os << "\tN=" << c.N;
  os << "\n";
  os << "PPA";
  for (const auto& c : report.cells) os << '\t' << cell_text(c.ppa_success, c.ppa_median, c.ppa_median_defined);
  os << "\nSSN";
  for (const auto& c : report.cells) os << '\t' << cell_text(c.ssn_success, c.ssn_median, c.ssn_median_defined);
  os << "\n";
  return os.str();
}

std::string format_table_csv(const BatchReport& report) {
  std::ostringstream os;
  os << "solver,N,successes,median\n";
  os.setf(std::ios::scientific);
  os.precision(10);
  auto put_median = [&os](double median, bool defined) {
    if (defined) {
      os << median;
    } else {
      os << "NaN";
    }
  };
  for (const auto& c : report.cells) {
    os << "PPA," << c.N << ',' << c.ppa_success << ',';
    put_median(c.ppa_median, c.ppa_median_defined);
    os << '\n';
  }
  for (const auto& c : report.cells) {
    os << "SSN," << c.N << ',' << c.ssn_success << ',';
    put_median(c.ssn_median, c.ssn_median_defined);
    os << '\n';
  }
  return os.str();
}

nlohmann::json report_json(const BatchReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["family"] = static_cast<int>(report.example_id);
  j["master_seed"] = report.master_seed;
  j["instances_per_cell"] = report.instances_per_cell;
  j["success_threshold"] = report.success_threshold;
  j["wall_seconds"] = report.wall_seconds;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json cj;
    cj["N"] = c.N;
    auto solver_json = [](int successes, double median, bool defined,
                          const std::vector<RunRecord>& runs) {
      nlohmann::json s;
      s["successes"] = successes;
      if (defined) {
        s["median"] = median;
      } else {
        s["median"] = nullptr;
      }
      s["finals"] = nlohmann::json::array();
      for (const auto& r : runs) {
        if (std::isfinite(r.final_value)) {
          s["finals"].push_back(r.final_value);
        } else {
          s["finals"].push_back(nullptr);
        }
      }
      return s;
    };
    cj["ppa"] = solver_json(c.ppa_success, c.ppa_median, c.ppa_median_defined, c.ppa_runs);
    cj["ssn"] = solver_json(c.ssn_success, c.ssn_median, c.ssn_median_defined, c.ssn_runs);
    j["cells"].push_back(std::move(cj));
  }
  return j;
}

void emit_traces(const ExperimentPlan& plan, const std::string& dir) {
  plan.validate();
  for (int N : plan.N_values) {
    const auto instances = generate_instances(plan, N);
    const InstanceRecord& rec = instances.front();
    const ObjectiveSpec f = make_example(rec.params);
    const int fam = static_cast<int>(plan.example_id);
    auto write_norm_csv = [&](const SolverTrace& trace, const std::string& path) {
      std::ofstream out(path);
      if (!out) throw std::runtime_error("emit_traces: cannot open " + path);
      out << "k,h,norm_x\n";
      out.precision(17);
      for (size_t k = 0; k < trace.iterates.size(); ++k) {
        out << k << ',' << trace.values[k] << ',' << norm(trace.iterates[k]) << '\n';
      }
    };
    std::ostringstream base;
    base << dir << "/ex" << fam << "_N" << N;
    write_norm_csv(run_ppa(f, rec.x0, plan.ppa_cfg), base.str() + "_ppa.csv");
    write_norm_csv(run_ssn(f, rec.x0, plan.ssn_cfg), base.str() + "_ssn.csv");
  }
}

}  // namespace ppaq
