#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "ppaq/core.hpp"
#include "ppaq/ppa.hpp"
#include "ppaq/rng.hpp"

#include "json.hpp"

namespace ppaq {

struct ViolationReport {
  long n_samples = 0;
  long n_violations = 0;
  double worst_margin = 0.0;  // most negative slack seen (0 when clean)
  std::optional<std::pair<Vector, double>> witness;  // (x, lambda) of worst violation

  bool clean() const { return n_violations == 0; }
  void note(const Vector& x, double lambda, double slack);
  /// Associative merge (sum counts, keep the worse witness).
  void merge(const ViolationReport& other);
};

nlohmann::json report_to_json(const std::string& check_name, const ViolationReport& r);

/// Draws a point and a lambda for the quasar inequality checks. lambda is
/// log-uniform on [1e-8, 1] (the inequality binds as lambda -> 0); the point
/// is uniform in the ball, redrawn until inside the objective's box when one
/// is present.
using Sampler = std::function<std::pair<Vector, double>(Rng&)>;

Sampler make_ball_sampler(const ObjectiveSpec& f, Vector center, double radius);
/// Adversarial variant: points snapped near coordinate kinks (some entries
/// pushed to ~0) to stress nonsmooth seams.
Sampler make_kink_sampler(const ObjectiveSpec& f, Vector center, double radius);

/// Definition of (kappa,gamma)-strong quasar-convexity at xbar:
/// h(l*xbar + (1-l)x) <= k*l*h(xbar) + (1-k*l)h(x)
///                        - l(1 - l/(2-k))(k*g/2)||x - xbar||^2.
/// Violations beyond slack 1e-9*(1+|h(x)|) are counted.
ViolationReport check_quasar_inequality(const ObjectiveSpec& f, const QuasarCertificate& cert,
                                        const Sampler& sampler, long n, std::uint64_t seed);

/// Quadratic growth: h(xbar) + (k*g/(2(2-k)))||y - xbar||^2 <= h(y).
ViolationReport check_quadratic_growth(const ObjectiveSpec& f, const QuasarCertificate& cert,
                                       const Sampler& sampler, long n, std::uint64_t seed);

/// Differentiable characterization at sampled smooth points y:
/// h(xbar) >= h(y) + (1/k)<grad h(y), xbar - y> + (g/2)||y - xbar||^2,
/// with the gradient taken by central differences (slack 1e-5). Points where
/// the finite-difference stencil is unreliable (kinks) are perturbed and, if
/// still unreliable, skipped.
ViolationReport check_diff_characterization(const ObjectiveSpec& f, const QuasarCertificate& cert,
                                            const Sampler& sampler, long n, std::uint64_t seed);

/// min over sampled x with ||x|| = max(radii) of h(x)/||x||^2; compare
/// against k*g/(2(2-k)) to certify 2-supercoercivity.
double check_supercoercive(const ObjectiveSpec& f, const std::vector<double>& radii,
                           int samples_per_radius, std::uint64_t seed);

/// Linear contraction factor 1/sqrt(1 + k b' g + k^2 b' g/(2-k)).
double theoretical_rate(double kappa, double gamma, double beta_lower);

/// ceil((ln(1/eps) + ln(dist0)) / ln(1/rate)), floored at 0; 0 when
/// dist0 <= eps.
long iteration_bound_strong(double eps, double kappa, double gamma, double beta_lower,
                            double dist0);

enum class QuasarBoundKind { step, value };

/// step kind: ceil(2 b'' gap0 / eps^2); value kind: ceil(dist0^2/(2 k b' eps)).
long iteration_bound_quasar(double eps, QuasarBoundKind kind, double beta_lower,
                            double beta_upper, double kappa, double dist0_or_gap0);

/// Alternative log-argument readings of the value-iteration bound: the
/// squared-distance form ln(d0^2/(2 k b' eps)) over ln(1/rate^2) and the
/// unsquared form with d0. Both are exposed because the two disagree and the
/// distance bound above is the one used operationally.
std::pair<long, long> iteration_bound_strong_value_readings(double eps, double kappa, double gamma,
                                                            double beta_lower, double dist0);

/// Per-step contraction test on the trace tail (last tail_fraction of the
/// steps): dist_{k+1} <= (rate + 1e-6) * dist_k; also checks the value decay
/// h(x^N) - h(xbar) <= d0^2/(2 k b' N). Requires distances_to_ref.
ViolationReport check_trace_linear(const ObjectiveSpec& f, const SolverTrace& trace,
                                   const QuasarCertificate& cert, double beta_lower,
                                   double tail_fraction = 0.8);

/// Sublinear value bound h(x^N) - h(xbar) <= ||x^0 - xbar||^2/(2 k b' N) for
/// every N >= 1 plus Fejer-monotone distances to xbar.
ViolationReport check_trace_sublinear(const ObjectiveSpec& f, const SolverTrace& trace,
                                      const QuasarCertificate& cert, double beta_lower);

/// Best-effort largest kappa with a clean quasar-inequality report, by
/// bisection on (0, 1]; gamma fixed.
double bisect_max_kappa(const ObjectiveSpec& f, const Vector& xbar, double gamma,
                        const Sampler& sampler, long n_per_probe, std::uint64_t seed,
                        int rounds = 20);

}  // namespace ppaq
