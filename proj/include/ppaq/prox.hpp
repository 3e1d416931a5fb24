#pragma once

#include <cstdint>
#include <vector>

#include "ppaq/core.hpp"

namespace ppaq {

struct ProxConfig {
  double beta = 0.05;            // prox parameter
  double inner_tol = 1e-8;       // residual norm target for the subsolver
  int inner_max_iter = 10000;
  int n_starts = 5;
  double start_radius = 1.0;     // ball around z for the random starts
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double merge_tol = 1e-6;       // inf-norm distance below which candidates merge
  double value_tie_rel = 1e-9;   // relative value window for tied minimizers
  std::uint64_t seed = 0;        // seed for the random starts

  // Deterministic scan for extra starts (dim <= 2 only). The subproblem
  // minimizer lies within sqrt(2 beta (h(z) - min h)) of z, so a polar grid
  // of that radius around z is evaluated and its best cells seed additional
  // Newton runs. Needed because oscillatory objectives give the subproblem
  // many local minima; set scan_starts = 0 to disable.
  int scan_angles = 96;
  int scan_radii = 16;
  int scan_starts = 8;

  // Additional origin-centered angular scan (dim 2 only). Objectives whose
  // angular profile oscillates independently of the radius have subproblem
  // basins that narrow linearly toward the origin; a fixed angular grid
  // around the origin resolves them at every radius, which the uniform
  // z-centered scan above cannot. Set to 0 to disable.
  int polar_angles = 512;

  void validate() const;
};

struct ProxCandidate {
  Vector point;
  double objective_value = 0.0;  // h(x) + (1/2 beta) ||x - z||^2
  double residual_norm = 0.0;
};

/// The (possibly multi-valued) approximate solution set of one proximal
/// subproblem: all candidates tied with the best value, distinct by more
/// than the merge tolerance, sorted by (value, lexicographic point).
struct ProxResult {
  std::vector<ProxCandidate> minimizers;
  bool converged = false;
  std::vector<int> inner_iterations;
};

/// Subproblem objective h(x) + (1/2 beta) ||z - x||^2.
double prox_objective(const ObjectiveSpec& f, const Vector& x, const Vector& z, double beta);

/// Clarke optimality residual of the subproblem:
/// F(x) = g + (x - z)/beta with g one Clarke element of h at x.
/// F(x) = 0 certifies subproblem stationarity.
Vector prox_residual(const ObjectiveSpec& f, const Vector& x, const Vector& z, double beta);

struct SsnSubsolveResult {
  Vector x;
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

/// Damped semismooth Newton on the residual F: steps
/// x <- x + t d with (V + I/beta) d = -F and Armijo backtracking on ||F||^2.
/// A singular Newton system falls back to a descent step along -F (the
/// negative gradient of the subproblem objective). Stops at
/// ||F|| <= inner_tol, the iteration cap, or step stagnation.
SsnSubsolveResult ssn_subsolve(const ObjectiveSpec& f, const Vector& z, const Vector& x0,
                               const ProxConfig& cfg);

/// Multi-start prox: runs the subsolver from z, the origin, and random
/// draws around z, projects every candidate into the box, and returns all
/// candidates within the value window of the best one.
ProxResult prox(const ObjectiveSpec& f, const Vector& z, const ProxConfig& cfg);

/// Brute-force oracle (dim <= 2): exhaustive grid minimization of the
/// subproblem objective over a bounded box, optionally followed by local
/// refinement rounds around the surviving cells. Returns all grid points
/// within one grid-cell tolerance of the minimum.
std::vector<Vector> prox_oracle_grid(const ObjectiveSpec& f, const Vector& z, double beta,
                                     const BoxConstraint& box, int resolution,
                                     int refine_rounds = 0);

}  // namespace ppaq
