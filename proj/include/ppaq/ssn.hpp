#pragma once

#include "ppaq/core.hpp"
#include "ppaq/ppa.hpp"

namespace ppaq {

struct SsnConfig {
  double tol = 1e-9;               // stop when ||G(x)|| <= tol
  int max_iter = 30000;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 20;
  double divergence_guard = 1e8;   // ||x|| beyond this means the run diverged
  /// Reference minimizer for distance recording (never used by the solver).
  std::optional<Vector> ref_point;

  void validate() const;
};

/// Damped semismooth Newton applied directly to the objective: with
/// G = clarke_element_at and V one generalized-Jacobian element, steps
/// x <- x + t d where V d = -G, with Armijo backtracking on ||G||^2.
/// A singular system falls back to steepest descent on ||G||^2 (d = -V^T G);
/// when no backtracked step decreases the residual, the full step is taken
/// anyway, preserving the method's characteristic oscillation/divergence on
/// hard instances. Iterates past the divergence guard end the run with a
/// non-finite-friendly `diverged` flag.
SolverTrace run_ssn(const ObjectiveSpec& f, const Vector& x0, const SsnConfig& cfg);

}  // namespace ppaq
