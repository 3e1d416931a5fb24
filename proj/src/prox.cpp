#include "ppaq/prox.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ppaq/rng.hpp"

namespace ppaq {

void ProxConfig::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("ProxConfig: beta must be > 0");
  if (!(inner_tol > 0.0)) throw std::invalid_argument("ProxConfig: inner_tol must be > 0");
  if (inner_max_iter < 1) throw std::invalid_argument("ProxConfig: inner_max_iter must be >= 1");
  if (n_starts < 1) throw std::invalid_argument("ProxConfig: n_starts must be >= 1");
  if (!(start_radius >= 0.0)) throw std::invalid_argument("ProxConfig: start_radius must be >= 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) {
    throw std::invalid_argument("ProxConfig: armijo_c must lie in (0,1)");
  }
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw std::invalid_argument("ProxConfig: backtrack_factor must lie in (0,1)");
  }
  if (scan_angles < 0 || scan_radii < 0 || scan_starts < 0 || polar_angles < 0) {
    throw std::invalid_argument("ProxConfig: scan parameters must be >= 0");
  }
}

double prox_objective(const ObjectiveSpec& f, const Vector& x, const Vector& z, double beta) {
  return f.value_at(x) + dot(sub(z, x), sub(z, x)) / (2.0 * beta);
}

Vector prox_residual(const ObjectiveSpec& f, const Vector& x, const Vector& z, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("prox_residual: beta must be > 0");
  Vector g = f.clarke_element_at(x);
  for (size_t i = 0; i < g.size(); ++i) g[i] += (x[i] - z[i]) / beta;
  return g;
}

namespace {

Vector clamp_to_domain(const ObjectiveSpec& f, const Vector& x) {
  return f.box ? project_box(x, *f.box) : x;
}

// Probe directions for kink handling: coordinate axes, 2-D diagonals, and the
// current residual direction (the jump normal at a kink).
std::vector<Vector> probe_directions(const ObjectiveSpec& f, const Vector& z, const Vector& x,
                                     double beta) {
  const int n = f.dim;
  std::vector<Vector> dirs;
  for (int i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
    e[i] = -1.0;
    dirs.push_back(e);
  }
  if (n == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    dirs.push_back(Vector{s, s});
    dirs.push_back(Vector{-s, -s});
    dirs.push_back(Vector{s, -s});
    dirs.push_back(Vector{-s, s});
  }
  Vector F = prox_residual(f, x, z, beta);
  const double fn = norm(F);
  if (std::isfinite(fn) && fn > 0.0) {
    dirs.push_back(scale(1.0 / fn, F));
    dirs.push_back(scale(-1.0 / fn, F));
  }
  return dirs;
}

// Deterministic compass-search polish of the subproblem objective. Newton
// stalls at minimizers that sit on a kink (there the single-element residual
// has no root); a direct search still converges to them.
Vector compass_polish(const ObjectiveSpec& f, const Vector& z, double beta, Vector x) {
  double val = prox_objective(f, x, z, beta);
  if (!std::isfinite(val)) return x;
  double step = 1e-3 * (1.0 + norm(x));
  const double step_floor = 1e-12;
  int evals = 0;
  const int eval_cap = 40000;
  while (step > step_floor && evals < eval_cap) {
    const std::vector<Vector> dirs = probe_directions(f, z, x, beta);
    bool improved = true;
    while (improved && evals < eval_cap) {
      improved = false;
      for (const Vector& d : dirs) {
        Vector cand = clamp_to_domain(f, axpy(x, step, d));
        const double vc = prox_objective(f, cand, z, beta);
        ++evals;
        if (std::isfinite(vc) && vc < val) {
          x = std::move(cand);
          val = vc;
          improved = true;
        }
      }
    }
    step *= 0.5;
  }
  return x;
}

// Local-minimality certificate for a candidate the residual test cannot
// certify: the one-sided difference quotients along every probe direction must
// be nonnegative up to a small slope tolerance, at two probe scales.
bool kink_certified(const ObjectiveSpec& f, const Vector& z, double beta, const Vector& x) {
  const double val = prox_objective(f, x, z, beta);
  if (!std::isfinite(val)) return false;
  const std::vector<Vector> dirs = probe_directions(f, z, x, beta);
  const double scale_x = 1.0 + norm(x);
  const double slope_tol = 1e-6 * (1.0 + std::abs(val));
  for (double delta : {1e-7 * scale_x, 1e-5 * scale_x}) {
    for (const Vector& d : dirs) {
      const Vector cand = clamp_to_domain(f, axpy(x, delta, d));
      const double vc = prox_objective(f, cand, z, beta);
      if (!std::isfinite(vc)) return false;
      if (vc < val - slope_tol * delta) return false;
    }
  }
  return true;
}

}  // namespace

SsnSubsolveResult ssn_subsolve(const ObjectiveSpec& f, const Vector& z, const Vector& x0,
                               const ProxConfig& cfg) {
  cfg.validate();
  require_finite(x0, "ssn_subsolve: x0");
  const int n = f.dim;
  const double beta = cfg.beta;

  Vector x = clamp_to_domain(f, x0);
  Vector best_x = x;
  double best_val = prox_objective(f, x, z, beta);

  SsnSubsolveResult out;
  int it = 0;
  for (; it < cfg.inner_max_iter; ++it) {
    Vector F = prox_residual(f, x, z, beta);
    const double r = norm(F);
    if (!std::isfinite(r)) break;
    const double val = prox_objective(f, x, z, beta);
    if (val < best_val) {
      best_val = val;
      best_x = x;
    }
    if (r <= cfg.inner_tol) {
      out.x = x;
      out.iterations = it;
      out.residual_norm = r;
      out.converged = true;
      return out;
    }

    // Newton direction from one generalized-Jacobian element
    Vector d;
    bool have_newton = false;
    if (f.has_jacobian()) {
      Matrix A = f.clarke_jacobian_at(x);
      for (int i = 0; i < n; ++i) A(i, i) += 1.0 / beta;
      Vector rhs = scale(-1.0, F);
      have_newton = solve_linear(A, rhs, d);
    }

    double step = 0.0;
    Vector x_next = x;
    if (have_newton) {
      // Armijo on the residual norm
      double t = 1.0;
      for (int bt = 0; bt < 50; ++bt) {
        Vector cand = clamp_to_domain(f, axpy(x, t, d));
        Vector Fc = prox_residual(f, cand, z, beta);
        const double rc = norm(Fc);
        if (std::isfinite(rc) && rc <= (1.0 - cfg.armijo_c * t) * r) {
          x_next = cand;
          step = t;
          break;
        }
        t *= cfg.backtrack_factor;
      }
    }
    if (step == 0.0) {
      // descent on the subproblem objective along -F (its negative gradient)
      double t = 1.0;
      for (int bt = 0; bt < 60; ++bt) {
        Vector cand = clamp_to_domain(f, axpy(x, -t, F));
        const double vc = prox_objective(f, cand, z, beta);
        if (std::isfinite(vc) && vc <= val - cfg.armijo_c * t * r * r) {
          x_next = cand;
          step = t;
          break;
        }
        t *= cfg.backtrack_factor;
      }
    }
    if (step == 0.0) break;  // no acceptable step in either direction

    const double moved = dist(x_next, x);
    x = x_next;
    if (moved <= 1e-15 * (1.0 + norm(x))) break;
  }

  // Non-converged: report the best iterate seen, by subproblem value.
  const double final_val = prox_objective(f, x, z, beta);
  out.x = final_val <= best_val ? x : best_x;
  out.iterations = it;
  out.residual_norm = norm(prox_residual(f, out.x, z, beta));
  out.converged = false;
  return out;
}

ProxResult prox(const ObjectiveSpec& f, const Vector& z, const ProxConfig& cfg) {
  cfg.validate();
  require_finite(z, "prox: z");
  const int n = f.dim;

  std::vector<Vector> starts;
  starts.push_back(clamp_to_domain(f, z));
  if (cfg.n_starts >= 2) starts.push_back(clamp_to_domain(f, Vector(n, 0.0)));
  Rng rng(cfg.seed);
  while (static_cast<int>(starts.size()) < cfg.n_starts) {
    starts.push_back(clamp_to_domain(f, rng.in_ball(z, cfg.start_radius)));
  }

  // Deterministic scan (dim <= 2): the minimizer x* obeys
  // ||x*-z||^2 <= 2 beta (h(z) - h(x*)), so it lies within
  // R = sqrt(2 beta (h(z) - lower bound)) of z. Seed Newton from the best
  // scan cells so isolated basins of oscillatory subproblems are not missed.
  std::optional<Vector> best_scan;
  if (n <= 2 && cfg.scan_starts > 0 && cfg.scan_angles > 0 && cfg.scan_radii > 0) {
    const Vector zc = starts.front();
    double floor_val = 0.0;  // gallery objectives are nonnegative; keep a safe floor
    for (const Vector& s : starts) floor_val = std::min(floor_val, f.value_at(s));
    const double gap = f.value_at(zc) - floor_val;
    const double R = std::sqrt(std::max(2.0 * cfg.beta * gap, 0.0));
    if (R > 0.0 && std::isfinite(R)) {
      std::vector<std::pair<double, Vector>> scan;
      auto probe = [&](Vector x) {
        x = clamp_to_domain(f, x);
        const double v = prox_objective(f, x, z, cfg.beta);
        if (std::isfinite(v)) scan.emplace_back(v, std::move(x));
      };
      if (n == 1) {
        const int m = cfg.scan_angles * cfg.scan_radii;
        for (int i = 0; i <= m; ++i) {
          probe(Vector{zc[0] - R + 2.0 * R * static_cast<double>(i) / m});
        }
      } else {
        // square-ish polar cells: outer rings get more angular samples so
        // the arc spacing stays near the radial spacing R/scan_radii
        constexpr double kTau = 2.0 * 3.14159265358979323846;
        const double radial = R / cfg.scan_radii;
        for (int j = 1; j <= cfg.scan_radii; ++j) {
          const double r = radial * j;
          const int n_th = std::max(cfg.scan_angles,
                                    static_cast<int>(std::ceil(kTau * r / radial)));
          for (int i = 0; i < n_th; ++i) {
            const double th = kTau * i / n_th;
            probe(Vector{zc[0] + r * std::cos(th), zc[1] + r * std::sin(th)});
          }
        }
      }
      // Origin-centered angular scan: for each ray from the origin, sample
      // the segment of the ray inside the reachable disk |x - z| <= R. The
      // angular resolution is fixed, so basins that narrow toward the origin
      // stay resolved; rays that miss the disk are skipped, so the cost
      // shrinks with R.
      if (n == 2 && cfg.polar_angles > 0) {
        constexpr double kTau = 2.0 * 3.14159265358979323846;
        const double nz = norm(zc);
        double th0 = 0.0, half = kTau / 2.0;
        if (nz > R) {  // the disk spans only a cone of directions
          th0 = std::atan2(zc[1], zc[0]);
          half = std::asin(std::min(1.0, R / nz)) + kTau / cfg.polar_angles;
        }
        const int n_th = std::max(
            8, static_cast<int>(std::ceil(cfg.polar_angles * half / (kTau / 2.0))));
        for (int i = 0; i <= n_th; ++i) {
          const double th = th0 - half + 2.0 * half * static_cast<double>(i) / n_th;
          const double ux = std::cos(th), uy = std::sin(th);
          const double c = zc[0] * ux + zc[1] * uy;
          const double disc = R * R - (nz * nz - c * c);
          if (disc <= 0.0) continue;
          const double s = std::sqrt(disc);
          const double r_hi = c + s;
          if (!(r_hi > 0.0)) continue;
          const double r_lo = std::max(0.0, c - s);
          for (int j = 0; j <= cfg.scan_radii; ++j) {
            const double r = r_lo + (r_hi - r_lo) * static_cast<double>(j) / cfg.scan_radii;
            probe(Vector{r * ux, r * uy});
          }
        }
      }
      std::sort(scan.begin(), scan.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (int i = 0; i < cfg.scan_starts && i < static_cast<int>(scan.size()); ++i) {
        starts.push_back(scan[static_cast<size_t>(i)].second);
      }
      if (!scan.empty()) best_scan = scan.front().second;
    }
  }

  ProxResult out;
  std::vector<ProxCandidate> pool;
  auto add_candidate = [&](const Vector& p) {
    Vector q = clamp_to_domain(f, p);
    if (!all_finite(q)) return;
    ProxCandidate c;
    c.point = std::move(q);
    c.objective_value = prox_objective(f, c.point, z, cfg.beta);
    c.residual_norm = norm(prox_residual(f, c.point, z, cfg.beta));
    if (std::isfinite(c.objective_value)) pool.push_back(std::move(c));
  };

  // Raw candidacy is reserved for the distinguished starts (projected z and
  // the origin): they can be true minimizers Newton cannot certify (kinks).
  // Scan probes and ball draws only seed Newton -- a probe landing in a flat
  // basin must not enter the tie set unpolished.
  const size_t n_raw = std::min<size_t>(starts.size(), 2);
  for (size_t si = 0; si < starts.size(); ++si) {
    if (si < n_raw) add_candidate(starts[si]);
    SsnSubsolveResult r = ssn_subsolve(f, z, starts[si], cfg);
    out.inner_iterations.push_back(r.iterations);
    out.converged = out.converged || r.converged;
    add_candidate(r.x);
  }

  if (pool.empty()) {
    out.converged = false;
    return out;
  }

  // Newton started from the best scan cell can still leave its basin; a
  // direct-search polish of that cell recovers the basin's own bottom. It
  // joins the pool only when it strictly beats every Newton result, so a
  // well-solved subproblem is not perturbed by a polish-accuracy duplicate.
  if (best_scan) {
    const Vector polished = compass_polish(f, z, cfg.beta, *best_scan);
    double pool_best = kInf;
    for (const auto& c : pool) pool_best = std::min(pool_best, c.objective_value);
    const double pv = prox_objective(f, polished, z, cfg.beta);
    if (pv < pool_best - cfg.value_tie_rel * (1.0 + std::abs(pool_best))) {
      add_candidate(polished);
    }
  }

  // A minimizer sitting exactly on a kink of h has no residual root for any
  // single Clarke element, so every Newton start can stall there. Polish the
  // best candidate by direct search and accept it when one-sided directional
  // probes certify local minimality.
  if (!out.converged) {
    size_t bi = 0;
    for (size_t i = 1; i < pool.size(); ++i) {
      if (pool[i].objective_value < pool[bi].objective_value) bi = i;
    }
    Vector polished = compass_polish(f, z, cfg.beta, pool[bi].point);
    if (kink_certified(f, z, cfg.beta, polished)) {
      add_candidate(polished);
      out.converged = true;
    }
  }

  double best = kInf;
  for (const auto& c : pool) best = std::min(best, c.objective_value);
  const double window = cfg.value_tie_rel * (1.0 + std::abs(best));

  std::vector<ProxCandidate> kept;
  for (auto& c : pool) {
    if (c.objective_value <= best + window) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(), [](const ProxCandidate& a, const ProxCandidate& b) {
    if (a.objective_value != b.objective_value) return a.objective_value < b.objective_value;
    return a.point < b.point;
  });
  for (auto& c : kept) {
    bool dup = false;
    for (const auto& m : out.minimizers) {
      if (norm_inf(sub(c.point, m.point)) <= cfg.merge_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.minimizers.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid oracle

namespace {

struct GridHit {
  std::vector<long> idx;
  Vector point;
  double value;
};

// One exhaustive pass over an axis-aligned grid; returns cluster
// representatives of the near-minimal cells (value within the local
// one-cell modulus of continuity of the minimum).
std::vector<GridHit> grid_pass(const ObjectiveSpec& f, const Vector& z, double beta,
                               const Vector& lo, const Vector& hi, long res) {
  const int n = f.dim;
  const long total = n == 1 ? res : res * res;
  std::vector<double> vals(static_cast<size_t>(total), kInf);
  Vector cell(n);
  for (int i = 0; i < n; ++i) cell[i] = (hi[i] - lo[i]) / static_cast<double>(res - 1);

  auto point_at = [&](long flat) {
    Vector x(n);
    if (n == 1) {
      x[0] = lo[0] + cell[0] * static_cast<double>(flat);
    } else {
      x[0] = lo[0] + cell[0] * static_cast<double>(flat / res);
      x[1] = lo[1] + cell[1] * static_cast<double>(flat % res);
    }
    return x;
  };

  double vmin = kInf;
  for (long flat = 0; flat < total; ++flat) {
    Vector x = point_at(flat);
    if (f.box && !f.box->contains(x, 1e-12)) continue;
    const double v = prox_objective(f, x, z, beta);
    vals[static_cast<size_t>(flat)] = v;
    vmin = std::min(vmin, v);
  }

  auto neighbor_tol = [&](long flat) {
    double tol = 0.0;
    const double v = vals[static_cast<size_t>(flat)];
    auto probe = [&](long other) {
      if (other < 0 || other >= total) return;
      const double w = vals[static_cast<size_t>(other)];
      if (std::isfinite(w)) tol = std::max(tol, std::abs(w - v));
    };
    if (n == 1) {
      probe(flat - 1);
      probe(flat + 1);
    } else {
      const long i = flat / res, j = flat % res;
      if (i > 0) probe(flat - res);
      if (i + 1 < res) probe(flat + res);
      if (j > 0) probe(flat - 1);
      if (j + 1 < res) probe(flat + 1);
    }
    return tol;
  };

  std::vector<GridHit> near;
  for (long flat = 0; flat < total; ++flat) {
    const double v = vals[static_cast<size_t>(flat)];
    if (!std::isfinite(v)) continue;
    if (v <= vmin + neighbor_tol(flat) + 1e-14 * (1.0 + std::abs(vmin))) {
      GridHit h;
      h.value = v;
      h.point = point_at(flat);
      if (n == 1) {
        h.idx = {flat};
      } else {
        h.idx = {flat / res, flat % res};
      }
      near.push_back(std::move(h));
    }
  }

  // greedy cluster suppression: keep the best hit of each 3-cell neighborhood
  std::sort(near.begin(), near.end(),
            [](const GridHit& a, const GridHit& b) { return a.value < b.value; });
  std::vector<GridHit> reps;
  for (auto& h : near) {
    bool close = false;
    for (const auto& r : reps) {
      long cheb = 0;
      for (size_t i = 0; i < h.idx.size(); ++i) {
        cheb = std::max(cheb, std::abs(h.idx[i] - r.idx[i]));
      }
      if (cheb <= 3) {
        close = true;
        break;
      }
    }
    if (!close) reps.push_back(std::move(h));
  }
  return reps;
}

}  // namespace

std::vector<Vector> prox_oracle_grid(const ObjectiveSpec& f, const Vector& z, double beta,
                                     const BoxConstraint& box, int resolution, int refine_rounds) {
  if (f.dim > 2) throw std::invalid_argument("prox_oracle_grid: only dim <= 2 supported");
  if (!box.bounded()) throw std::invalid_argument("prox_oracle_grid: box must be bounded");
  if (resolution < 8) throw std::invalid_argument("prox_oracle_grid: resolution too small");

  Vector lo = box.lower, hi = box.upper;
  if (f.box) {  // intersect with the objective's own domain
    for (int i = 0; i < f.dim; ++i) {
      lo[i] = std::max(lo[i], f.box->lower[i]);
      hi[i] = std::min(hi[i], f.box->upper[i]);
    }
  }

  std::vector<GridHit> reps = grid_pass(f, z, beta, lo, hi, resolution);
  Vector cell(f.dim);
  for (int i = 0; i < f.dim; ++i) cell[i] = (hi[i] - lo[i]) / (resolution - 1.0);
  const double coarse_cell = norm(cell);

  const long refine_res = 65;
  for (int round = 0; round < refine_rounds; ++round) {
    std::vector<GridHit> next;
    for (const auto& r : reps) {
      Vector rlo(f.dim), rhi(f.dim);
      for (int i = 0; i < f.dim; ++i) {
        rlo[i] = std::max(lo[i], r.point[i] - 4.0 * cell[i]);
        rhi[i] = std::min(hi[i], r.point[i] + 4.0 * cell[i]);
      }
      auto local = grid_pass(f, z, beta, rlo, rhi, refine_res);
      next.insert(next.end(), local.begin(), local.end());
    }
    for (int i = 0; i < f.dim; ++i) cell[i] = cell[i] * 8.0 / (refine_res - 1.0);
    // dedupe by distance, best value first
    std::sort(next.begin(), next.end(),
              [](const GridHit& a, const GridHit& b) { return a.value < b.value; });
    // merge at the coarse-cell scale: refined reps closer than one original
    // cell came from the same basin (their windows overlapped)
    reps.clear();
    for (auto& h : next) {
      bool close = false;
      for (const auto& r : reps) {
        if (dist(h.point, r.point) <= std::max(2.0 * coarse_cell, 4.0 * norm(cell))) {
          close = true;
          break;
        }
      }
      if (!close) reps.push_back(std::move(h));
    }
  }

  // drop refined representatives that are no longer near-minimal
  double vmin = kInf;
  for (const auto& r : reps) vmin = std::min(vmin, r.value);
  std::vector<Vector> out;
  const double tol = std::max(1e-12 * (1.0 + std::abs(vmin)), norm(cell));
  for (auto& r : reps) {
    if (r.value <= vmin + tol) out.push_back(std::move(r.point));
  }
  return out;
}

}  // namespace ppaq
