// Command-line front end: solving, prox evaluation, certification,
// experiment tables, trace export, and bound calculators. All artifacts are
// UTF-8 CSV/JSON with an embedded schema version.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ppaq/checker.hpp"
#include "ppaq/experiments.hpp"
#include "ppaq/functions.hpp"
#include "ppaq/ppa.hpp"
#include "ppaq/prox.hpp"
#include "ppaq/ssn.hpp"

namespace {

using ppaq::Vector;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitCap = 2;
constexpr int kExitDiverged = 3;

struct FnOptions {
  std::string fn;
  std::string instance_path;
  double p = 0.5;
  double alpha = 1.0;
  double beta_ces = 1.0;
  int dim = 2;
  int N = 2;
  std::uint64_t seed = 0;
  std::vector<double> ces_alphas;
};

void add_fn_flags(CLI::App* cmd, FnOptions& o) {
  cmd->add_option("--fn", o.fn,
                  "gallery function: quadratic|lp|lp_reg|ces|leontief|power|sqrt_abs|ex1|ex2");
  cmd->add_option("--instance", o.instance_path, "instance JSON file (overrides --fn)");
  cmd->add_option("--p", o.p, "lp exponent");
  cmd->add_option("--alpha", o.alpha, "power/leontief exponent");
  cmd->add_option("--ces-beta", o.beta_ces, "CES exponent");
  cmd->add_option("--dim", o.dim, "dimension for gallery functions");
  cmd->add_option("--N", o.N, "trig-layer term count for ex1/ex2");
  cmd->add_option("--weights", o.ces_alphas, "CES/Leontief weights");
}

ppaq::ObjectiveSpec build_objective(const FnOptions& o) {
  if (!o.instance_path.empty()) {
    std::ifstream in(o.instance_path);
    if (!in) throw CLI::ValidationError("--instance", "cannot open " + o.instance_path);
    nlohmann::json j;
    in >> j;
    return ppaq::make_example(ppaq::params_from_json(j));
  }
  if (o.fn == "quadratic") return ppaq::make_quadratic(o.dim);
  if (o.fn == "lp") return ppaq::make_lp_quasinorm(o.dim, o.p);
  if (o.fn == "lp_reg") return ppaq::make_lp_regularizer(o.dim, o.p);
  if (o.fn == "ces") {
    Vector w = o.ces_alphas.empty() ? Vector(o.dim, 1.0) : o.ces_alphas;
    return ppaq::make_ces(w, o.beta_ces);
  }
  if (o.fn == "leontief") {
    Vector w = o.ces_alphas.empty() ? Vector(o.dim, 1.0) : o.ces_alphas;
    return ppaq::make_leontief(w, o.alpha);
  }
  if (o.fn == "power") return ppaq::make_euclid_power(o.dim, o.alpha);
  if (o.fn == "sqrt_abs") return ppaq::make_sqrt_abs();
  if (o.fn == "ex1" || o.fn == "ex2") {
    ppaq::Rng rng(o.seed);
    ppaq::RandomFamilyParams params =
        o.fn == "ex1" ? ppaq::RandomFamilyParams::draw_example1(o.N, 1.0, 2.0, 2, o.seed, rng)
                      : ppaq::RandomFamilyParams::draw_example2(o.N, 2.0, 2, o.seed, rng);
    return ppaq::make_example(params);
  }
  throw CLI::ValidationError("--fn", "unknown function '" + o.fn + "'");
}

int exit_code_for(ppaq::TerminationReason r) {
  switch (r) {
    case ppaq::TerminationReason::step_tol:
    case ppaq::TerminationReason::fixed_point:
      return kExitOk;
    case ppaq::TerminationReason::max_iter:
      return kExitCap;
    default:
      return kExitDiverged;
  }
}

nlohmann::json trace_summary(const ppaq::SolverTrace& trace) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["final_value"] = trace.final_value();
  j["final_point"] = trace.final_point();
  j["iterations"] = trace.steps();
  j["terminated_by"] = ppaq::to_string(trace.terminated_by);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximal point solver for nonsmooth quasar-convex objectives"};
  app.require_subcommand(1);

  // ---- solve
  auto* solve = app.add_subcommand("solve", "run PPA or SSN on an objective");
  FnOptions solve_fn;
  std::vector<double> solve_x0;
  std::string solver = "ppa";
  double solve_beta = 0.05, solve_tol = 1e-9;
  int solve_max_iter = 30000;
  std::string trace_path, summary_path;
  add_fn_flags(solve, solve_fn);
  solve->add_option("--x0", solve_x0, "start point (defaults to a seeded draw in [-2,2]^dim)");
  solve->add_option("--solver", solver, "ppa|ssn")->check(CLI::IsMember({"ppa", "ssn"}));
  solve->add_option("--beta", solve_beta, "constant prox parameter (PPA)");
  solve->add_option("--tol", solve_tol, "stopping tolerance");
  solve->add_option("--max-iter", solve_max_iter, "outer iteration cap");
  solve->add_option("--seed", solve_fn.seed, "seed for instance draws and x0")
      ->envname("PPAQ_SEED");
  solve->add_option("--trace", trace_path, "write the iteration trace CSV here");
  solve->add_option("--summary", summary_path, "write the JSON run summary here");

  // ---- prox
  auto* proxc = app.add_subcommand("prox", "evaluate one proximal subproblem");
  FnOptions prox_fn;
  std::vector<double> prox_z;
  double prox_beta = 0.05;
  std::vector<double> prox_box;
  add_fn_flags(proxc, prox_fn);
  proxc->add_option("--z", prox_z, "prox center")->required();
  proxc->add_option("--beta", prox_beta, "prox parameter");
  proxc->add_option("--box", prox_box, "box constraint as lo hi (same for all coordinates)")
      ->expected(2);
  proxc->add_option("--seed", prox_fn.seed, "seed for multi-start draws")->envname("PPAQ_SEED");

  // ---- certify
  auto* certify = app.add_subcommand("certify", "sample-check quasar-convexity of an objective");
  FnOptions cert_fn;
  double cert_kappa = 1.0, cert_gamma = 0.0, cert_radius = 1.0;
  long cert_samples = 100000;
  std::vector<double> cert_xbar;
  bool cert_diff = false;
  add_fn_flags(certify, cert_fn);
  certify->add_option("--kappa", cert_kappa, "claimed kappa")->required();
  certify->add_option("--gamma", cert_gamma, "claimed gamma");
  certify->add_option("--xbar", cert_xbar, "claimed minimizer (default 0)");
  certify->add_option("--samples", cert_samples, "sample count");
  certify->add_option("--radius", cert_radius, "sampling ball radius");
  certify->add_flag("--diff", cert_diff, "also run the differentiable characterization check");
  certify->add_option("--seed", cert_fn.seed, "sampling seed")->envname("PPAQ_SEED");

  // ---- table
  auto* table = app.add_subcommand("table", "batch PPA-vs-SSN table for a random family");
  int table_example = 1, table_instances = 50;
  std::uint64_t table_seed = 0;
  std::vector<int> table_N;
  std::string table_out;
  table->add_option("--example", table_example, "family: 1 or 2")->check(CLI::Range(1, 2));
  table->add_option("--instances", table_instances, "instances per cell");
  table->add_option("--N", table_N, "term counts (default 2 5 10 20)");
  table->add_option("--seed", table_seed, "master seed")->envname("PPAQ_SEED");
  table->add_option("--out", table_out, "artifact path prefix (writes .txt/.csv/.json)");
  bool table_raw = false;
  table->add_flag("--raw-trig", table_raw,
                  "evaluate the trig layer at raw coordinates instead of x/||x||");

  // ---- trace
  auto* tracec = app.add_subcommand("trace", "export (k, h, ||x||) CSVs for plot reproduction");
  int trace_example = 1;
  std::uint64_t trace_seed = 0;
  std::vector<int> trace_N;
  std::string trace_dir = ".";
  tracec->add_option("--example", trace_example, "family: 1 or 2")->check(CLI::Range(1, 2));
  tracec->add_option("--N", trace_N, "term counts (default 2 5 10 20)");
  tracec->add_option("--seed", trace_seed, "master seed")->envname("PPAQ_SEED");
  tracec->add_option("--dir", trace_dir, "output directory");
  bool trace_raw = false;
  tracec->add_flag("--raw-trig", trace_raw,
                   "evaluate the trig layer at raw coordinates instead of x/||x||");

  // ---- bounds
  auto* bounds = app.add_subcommand("bounds", "print the rate and iteration bounds");
  double b_kappa = 1.0, b_gamma = 0.0, b_beta_lower = 0.05, b_beta_upper = 0.05;
  double b_eps = 1e-3, b_dist0 = 1.0, b_gap0 = 0.0;
  bounds->add_option("--kappa", b_kappa);
  bounds->add_option("--gamma", b_gamma);
  bounds->add_option("--beta-lower", b_beta_lower);
  bounds->add_option("--beta-upper", b_beta_upper);
  bounds->add_option("--eps", b_eps);
  bounds->add_option("--dist0", b_dist0);
  bounds->add_option("--gap0", b_gap0);

  try {
    app.parse(argc, argv);

    if (solve->parsed()) {
      ppaq::ObjectiveSpec f = build_objective(solve_fn);
      Vector x0 = solve_x0;
      if (x0.empty()) x0 = ppaq::Rng(ppaq::splitmix64(solve_fn.seed)).uniform_vec(f.dim, -2.0, 2.0);
      if (static_cast<int>(x0.size()) != f.dim) {
        throw CLI::ValidationError("--x0", "dimension mismatch with the objective");
      }
      ppaq::SolverTrace trace;
      if (solver == "ppa") {
        ppaq::PpaConfig cfg;
        cfg.beta_schedule = [solve_beta](int) { return solve_beta; };
        cfg.beta_lower = solve_beta;
        cfg.outer_tol = solve_tol;
        cfg.max_outer_iter = solve_max_iter;
        cfg.prox_cfg.beta = solve_beta;
        cfg.prox_cfg.seed = solve_fn.seed;
        trace = ppaq::run_ppa(f, x0, cfg);
      } else {
        ppaq::SsnConfig cfg;
        cfg.tol = solve_tol;
        cfg.max_iter = solve_max_iter;
        trace = ppaq::run_ssn(f, x0, cfg);
      }
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        ppaq::write_trace_csv(trace, out);
      }
      nlohmann::json summary = trace_summary(trace);
      if (!summary_path.empty()) {
        std::ofstream out(summary_path);
        out << summary.dump(2) << '\n';
      }
      std::cout << summary.dump(2) << std::endl;
      return exit_code_for(trace.terminated_by);
    }

    if (proxc->parsed()) {
      ppaq::ObjectiveSpec f = build_objective(prox_fn);
      if (static_cast<int>(prox_z.size()) != f.dim) {
        throw CLI::ValidationError("--z", "dimension mismatch with the objective");
      }
      if (!prox_box.empty()) f.box = ppaq::BoxConstraint::cube(f.dim, prox_box[0], prox_box[1]);
      ppaq::ProxConfig cfg;
      cfg.beta = prox_beta;
      cfg.seed = prox_fn.seed;
      ppaq::ProxResult res = ppaq::prox(f, prox_z, cfg);
      nlohmann::json j;
      j["schema_version"] = 1;
      j["converged"] = res.converged;
      j["minimizers"] = nlohmann::json::array();
      for (const auto& m : res.minimizers) {
        j["minimizers"].push_back({{"point", m.point},
                                   {"value", m.objective_value},
                                   {"residual", m.residual_norm}});
      }
      std::cout << j.dump(2) << std::endl;
      return res.converged ? kExitOk : kExitCap;
    }

    if (certify->parsed()) {
      ppaq::ObjectiveSpec f = build_objective(cert_fn);
      Vector xbar = cert_xbar.empty() ? Vector(f.dim, 0.0) : cert_xbar;
      if (f.box) xbar = ppaq::project_box(xbar, *f.box);
      ppaq::QuasarCertificate cert{cert_kappa, cert_gamma, xbar};
      Vector center = xbar;
      ppaq::Sampler sampler = ppaq::make_ball_sampler(f, center, cert_radius);
      nlohmann::json j;
      j["schema_version"] = 1;
      ppaq::ViolationReport quasar = ppaq::check_quasar_inequality(
          f, cert, sampler, cert_samples, ppaq::splitmix64(cert_fn.seed));
      j["quasar_inequality"] = ppaq::report_to_json("quasar_inequality", quasar);
      long total_violations = quasar.n_violations;
      if (cert_gamma > 0.0) {
        ppaq::ViolationReport growth = ppaq::check_quadratic_growth(
            f, cert, sampler, cert_samples, ppaq::splitmix64(cert_fn.seed + 1));
        j["quadratic_growth"] = ppaq::report_to_json("quadratic_growth", growth);
        total_violations += growth.n_violations;
      }
      if (cert_diff) {
        ppaq::ViolationReport diff = ppaq::check_diff_characterization(
            f, cert, sampler, std::min(cert_samples, 20000L), ppaq::splitmix64(cert_fn.seed + 2));
        j["diff_characterization"] = ppaq::report_to_json("diff_characterization", diff);
        total_violations += diff.n_violations;
      }
      j["total_violations"] = total_violations;
      std::cout << j.dump(2) << std::endl;
      return kExitOk;
    }

    if (table->parsed()) {
      ppaq::ExperimentPlan plan = ppaq::ExperimentPlan::defaults(
          table_example == 1 ? ppaq::ExampleId::example1 : ppaq::ExampleId::example2, table_seed);
      plan.instances_per_cell = table_instances;
      plan.raw_trig_coords = table_raw;
      if (!table_N.empty()) plan.N_values = table_N;
      ppaq::BatchReport report = ppaq::run_plan(plan);
      const std::string text = ppaq::format_table_text(report);
      std::cout << text;
      if (!table_out.empty()) {
        std::ofstream(table_out + ".txt") << text;
        std::ofstream(table_out + ".csv") << ppaq::format_table_csv(report);
        std::ofstream(table_out + ".json") << ppaq::report_json(report).dump(2) << '\n';
      }
      return kExitOk;
    }

    if (tracec->parsed()) {
      ppaq::ExperimentPlan plan = ppaq::ExperimentPlan::defaults(
          trace_example == 1 ? ppaq::ExampleId::example1 : ppaq::ExampleId::example2, trace_seed);
      plan.raw_trig_coords = trace_raw;
      if (!trace_N.empty()) plan.N_values = trace_N;
      ppaq::emit_traces(plan, trace_dir);
      return kExitOk;
    }

    if (bounds->parsed()) {
      nlohmann::json j;
      j["schema_version"] = 1;
      if (b_gamma > 0.0) {
        j["rate"] = ppaq::theoretical_rate(b_kappa, b_gamma, b_beta_lower);
        j["iterations_distance"] =
            ppaq::iteration_bound_strong(b_eps, b_kappa, b_gamma, b_beta_lower, b_dist0);
        auto [unsquared, squared] = ppaq::iteration_bound_strong_value_readings(
            b_eps, b_kappa, b_gamma, b_beta_lower, b_dist0);
        j["iterations_value_reading_unsquared"] = unsquared;
        j["iterations_value_reading_squared"] = squared;
      } else {
        j["iterations_value"] = ppaq::iteration_bound_quasar(
            b_eps, ppaq::QuasarBoundKind::value, b_beta_lower, b_beta_upper, b_kappa, b_dist0);
        if (b_gap0 > 0.0) {
          j["iterations_step"] = ppaq::iteration_bound_quasar(
              b_eps, ppaq::QuasarBoundKind::step, b_beta_lower, b_beta_upper, b_kappa, b_gap0);
        }
      }
      std::cout << j.dump(2) << std::endl;
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitBadInput;
  }
  return kExitBadInput;
}
