#include "ppaq/ssn.hpp"

#include <cmath>
#include <stdexcept>

namespace ppaq {

void SsnConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("SsnConfig: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("SsnConfig: max_iter must be >= 1");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) {
    throw std::invalid_argument("SsnConfig: armijo_c must lie in (0,1)");
  }
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw std::invalid_argument("SsnConfig: backtrack_factor must lie in (0,1)");
  }
  if (max_backtracks < 0) throw std::invalid_argument("SsnConfig: max_backtracks must be >= 0");
  if (!(divergence_guard > 0.0)) {
    throw std::invalid_argument("SsnConfig: divergence_guard must be > 0");
  }
}

namespace {

Vector matvec_transpose(const Matrix& A, const Vector& x) {
  Vector y(A.n, 0.0);
  for (int i = 0; i < A.n; ++i) {
    for (int j = 0; j < A.n; ++j) y[j] += A(i, j) * x[i];
  }
  return y;
}

}  // namespace

SolverTrace run_ssn(const ObjectiveSpec& f, const Vector& x0, const SsnConfig& cfg) {
  cfg.validate();
  require_finite(x0, "run_ssn: x0");
  if (!f.has_jacobian()) {
    throw std::invalid_argument("run_ssn: objective provides no generalized Jacobian");
  }

  SolverTrace trace;
  auto record = [&](const Vector& x) {
    trace.iterates.push_back(x);
    trace.values.push_back(f.value_at(x));
    if (cfg.ref_point) {
      if (!trace.distances_to_ref) trace.distances_to_ref.emplace();
      trace.distances_to_ref->push_back(dist(x, *cfg.ref_point));
    }
  };

  Vector x = x0;
  record(x);

  trace.terminated_by = TerminationReason::max_iter;
  for (int k = 0; k < cfg.max_iter; ++k) {
    Vector G = f.clarke_element_at(x);
    const double r = norm(G);
    if (!std::isfinite(r)) {
      trace.terminated_by = TerminationReason::diverged;
      break;
    }
    if (r <= cfg.tol) {
      trace.terminated_by = TerminationReason::step_tol;
      break;
    }

    Matrix V = f.clarke_jacobian_at(x);
    Vector d;
    if (!solve_linear(V, scale(-1.0, G), d)) {
      d = scale(-1.0, matvec_transpose(V, G));  // steepest descent on ||G||^2
      const double dn = norm(d);
      if (!(dn > 0.0) || !std::isfinite(dn)) {
        trace.terminated_by = TerminationReason::diverged;
        break;
      }
    }

    double t = 1.0;
    Vector x_next = axpy(x, 1.0, d);
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      Vector cand = axpy(x, t, d);
      const double rc = norm(f.clarke_element_at(cand));
      if (std::isfinite(rc) && rc * rc <= (1.0 - cfg.armijo_c * t) * r * r) {
        x_next = std::move(cand);
        break;
      }
      t *= cfg.backtrack_factor;
      // exhausted: keep the full step (x_next already holds it)
    }

    trace.step_norms.push_back(dist(x_next, x));
    InnerStats stats;
    stats.iterations = 1;
    stats.residual_norm = r;
    trace.inner_stats.push_back(stats);
    x = std::move(x_next);
    record(x);

    if (!all_finite(x) || norm(x) > cfg.divergence_guard) {
      trace.terminated_by = TerminationReason::diverged;
      break;
    }
  }
  return trace;
}

}  // namespace ppaq
