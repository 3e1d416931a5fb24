#include "ppaq/ppa.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ppaq {

const char* to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::step_tol: return "step_tol";
    case TerminationReason::max_iter: return "max_iter";
    case TerminationReason::fixed_point: return "fixed_point";
    case TerminationReason::diverged: return "diverged";
    case TerminationReason::prox_failure: return "prox_failure";
  }
  return "unknown";
}

void write_trace_csv(const SolverTrace& trace, std::ostream& out) {
  out << "k,h,step,dist,inner_iters\n";
  out.precision(17);
  const size_t n = trace.iterates.size();
  for (size_t k = 0; k < n; ++k) {
    out << k << ',' << trace.values[k] << ',';
    if (k < trace.step_norms.size()) out << trace.step_norms[k];
    out << ',';
    if (trace.distances_to_ref) out << (*trace.distances_to_ref)[k];
    out << ',';
    if (k < trace.inner_stats.size()) out << trace.inner_stats[k].iterations;
    out << '\n';
  }
}

void PpaConfig::validate() const {
  if (!(beta_lower > 0.0)) throw std::invalid_argument("PpaConfig: beta_lower must be > 0");
  if (beta_upper && !(*beta_upper >= beta_lower)) {
    throw std::invalid_argument("PpaConfig: beta_upper must be >= beta_lower");
  }
  if (!(outer_tol > 0.0)) throw std::invalid_argument("PpaConfig: outer_tol must be > 0");
  if (max_outer_iter < 1) throw std::invalid_argument("PpaConfig: max_outer_iter must be >= 1");
  prox_cfg.validate();
  // spot-check the schedule against the [beta_lower, beta_upper] band
  for (int k : {0, 1, 2, 100, max_outer_iter - 1}) {
    if (k >= max_outer_iter) continue;
    const double b = beta_at(k);
    if (!(b >= beta_lower) || (beta_upper && !(b <= *beta_upper))) {
      throw std::invalid_argument("PpaConfig: beta_schedule leaves the [beta_lower, beta_upper] band");
    }
  }
}

Vector select_iterate(const ProxResult& candidates) {
  if (candidates.minimizers.empty()) {
    throw std::logic_error("select_iterate: empty candidate list");
  }
  return candidates.minimizers.front().point;
}

SolverTrace run_ppa(const ObjectiveSpec& f, const Vector& x0, const PpaConfig& cfg) {
  cfg.validate();
  require_finite(x0, "run_ppa: x0");

  SolverTrace trace;
  auto record = [&](const Vector& x) {
    trace.iterates.push_back(x);
    trace.values.push_back(f.value_at(x));
    if (cfg.ref_point) {
      if (!trace.distances_to_ref) trace.distances_to_ref.emplace();
      trace.distances_to_ref->push_back(dist(x, *cfg.ref_point));
    }
  };

  Vector x = f.box ? project_box(x0, *f.box) : x0;
  record(x);

  trace.terminated_by = TerminationReason::max_iter;
  for (int k = 0; k < cfg.max_outer_iter; ++k) {
    ProxConfig pcfg = cfg.prox_cfg;
    pcfg.beta = cfg.beta_at(k);
    ProxResult pr = prox(f, x, pcfg);
    if (pr.minimizers.empty() || !pr.converged) {
      trace.terminated_by = TerminationReason::prox_failure;
      break;
    }
    Vector x_next = select_iterate(pr);

    InnerStats stats;
    for (int it : pr.inner_iterations) stats.iterations += it;
    stats.residual_norm = pr.minimizers.front().residual_norm;

    const double step = dist(x_next, x);
    if (step == 0.0) {  // Step 2: exact fixed point
      trace.terminated_by = TerminationReason::fixed_point;
      break;
    }
    trace.step_norms.push_back(step);
    trace.inner_stats.push_back(stats);
    x = std::move(x_next);
    record(x);

    if (!all_finite(x)) {
      trace.terminated_by = TerminationReason::diverged;
      break;
    }
    if (step <= cfg.outer_tol) {
      trace.terminated_by = TerminationReason::step_tol;
      break;
    }
  }
  return trace;
}

}  // namespace ppaq
