#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppaq/core.hpp"
#include "ppaq/prox.hpp"

namespace ppaq {

enum class TerminationReason {
  step_tol,      // ||x^{k+1} - x^k|| <= outer_tol
  max_iter,      // iteration cap reached
  fixed_point,   // exact fixed point of the prox map
  diverged,      // iterate norm blew past the divergence guard
  prox_failure,  // no subproblem start converged; outer loop halted
};

const char* to_string(TerminationReason r);

struct InnerStats {
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Full record of one solver run. Lengths: iterates and values have K+1
/// entries for a K-step run; step_norms, inner_stats and (when present)
/// distances_to_ref[k] align with iterate k (distances have K+1 entries).
struct SolverTrace {
  std::vector<Vector> iterates;
  std::vector<double> values;
  std::vector<double> step_norms;
  std::optional<std::vector<double>> distances_to_ref;
  std::vector<InnerStats> inner_stats;
  TerminationReason terminated_by = TerminationReason::max_iter;

  int steps() const { return static_cast<int>(step_norms.size()); }
  const Vector& final_point() const { return iterates.back(); }
  double final_value() const { return values.back(); }
};

/// CSV export, one row per outer iterate:
/// k, h(x^k), step ||x^{k+1}-x^k|| (empty on the last row),
/// dist ||x^k - xbar|| (empty when no reference point), inner_iters.
void write_trace_csv(const SolverTrace& trace, std::ostream& out);

struct PpaConfig {
  /// beta_k as a function of the outer iteration index; defaults to the
  /// constant 0.05.
  std::function<double(int)> beta_schedule;
  double beta_lower = 0.05;              // beta'
  std::optional<double> beta_upper;      // beta''
  double outer_tol = 1e-9;               // epsilon
  int max_outer_iter = 30000;
  ProxConfig prox_cfg;
  /// Reference minimizer xbar; when set, distances_to_ref is recorded.
  std::optional<Vector> ref_point;

  double beta_at(int k) const { return beta_schedule ? beta_schedule(k) : 0.05; }
  void validate() const;
};

/// Deterministic selection among tied prox minimizers: lowest subproblem
/// value, ties broken lexicographically. The list is already sorted that
/// way, so this is its front. Throws on an empty list.
Vector select_iterate(const ProxResult& candidates);

/// Algorithm: x^{k+1} in Prox_{beta_k h}(x^k) until the step norm falls
/// below outer_tol, the cap is hit, or an exact fixed point occurs.
SolverTrace run_ppa(const ObjectiveSpec& f, const Vector& x0, const PpaConfig& cfg);

}  // namespace ppaq
