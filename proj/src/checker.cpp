#include "ppaq/checker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppaq {

void ViolationReport::note(const Vector& x, double lambda, double slack) {
  ++n_samples;
  if (slack < 0.0) {
    ++n_violations;
    if (slack < worst_margin) {
      worst_margin = slack;
      witness = {x, lambda};
    }
  }
}

void ViolationReport::merge(const ViolationReport& other) {
  n_samples += other.n_samples;
  n_violations += other.n_violations;
  if (other.worst_margin < worst_margin) {
    worst_margin = other.worst_margin;
    witness = other.witness;
  }
}

nlohmann::json report_to_json(const std::string& check_name, const ViolationReport& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["check"] = check_name;
  j["n_samples"] = r.n_samples;
  j["n_violations"] = r.n_violations;
  j["worst_margin"] = r.worst_margin;
  if (r.witness) {
    j["witness"]["x"] = r.witness->first;
    j["witness"]["lambda"] = r.witness->second;
  }
  return j;
}

namespace {

double log_uniform_lambda(Rng& rng) {
  return std::exp(rng.uniform(std::log(1e-8), 0.0));
}

Vector draw_in_domain(const ObjectiveSpec& f, const Vector& center, double radius, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vector x = rng.in_ball(center, radius);
    if (!f.box || f.box->contains(x)) return x;
  }
  throw std::runtime_error("sampler: ball does not intersect the domain box");
}

}  // namespace

Sampler make_ball_sampler(const ObjectiveSpec& f, Vector center, double radius) {
  return [&f, center = std::move(center), radius](Rng& rng) {
    Vector x = draw_in_domain(f, center, radius, rng);
    return std::make_pair(std::move(x), log_uniform_lambda(rng));
  };
}

Sampler make_kink_sampler(const ObjectiveSpec& f, Vector center, double radius) {
  return [&f, center = std::move(center), radius](Rng& rng) {
    Vector x = draw_in_domain(f, center, radius, rng);
    for (double& xi : x) {
      if (rng.unit() < 0.5) xi = rng.uniform(-1e-8, 1e-8);
    }
    if (f.box) x = project_box(x, *f.box);
    return std::make_pair(std::move(x), log_uniform_lambda(rng));
  };
}

ViolationReport check_quasar_inequality(const ObjectiveSpec& f, const QuasarCertificate& cert,
                                        const Sampler& sampler, long n, std::uint64_t seed) {
  cert.validate();
  const double k = cert.kappa, g = cert.gamma;
  const double h_bar = f.value_at(cert.xbar);
  Rng rng(seed);
  ViolationReport rep;
  for (long i = 0; i < n; ++i) {
    auto [x, lambda] = sampler(rng);
    const double hx = f.value_at(x);
    Vector mix = axpy(scale(1.0 - lambda, x), lambda, cert.xbar);
    const double lhs = f.value_at(mix);
    const double d2 = dot(sub(x, cert.xbar), sub(x, cert.xbar));
    const double rhs = k * lambda * h_bar + (1.0 - k * lambda) * hx -
                       lambda * (1.0 - lambda / (2.0 - k)) * (k * g / 2.0) * d2;
    const double tol = 1e-9 * (1.0 + std::abs(hx));
    rep.note(x, lambda, rhs - lhs + tol);
  }
  return rep;
}

ViolationReport check_quadratic_growth(const ObjectiveSpec& f, const QuasarCertificate& cert,
                                       const Sampler& sampler, long n, std::uint64_t seed) {
  cert.validate();
  const double modulus = cert.kappa * cert.gamma / (2.0 * (2.0 - cert.kappa));
  const double h_bar = f.value_at(cert.xbar);
  Rng rng(seed);
  ViolationReport rep;
  for (long i = 0; i < n; ++i) {
    auto [y, lambda] = sampler(rng);
    const double hy = f.value_at(y);
    const double d2 = dot(sub(y, cert.xbar), sub(y, cert.xbar));
    const double tol = 1e-9 * (1.0 + std::abs(hy));
    rep.note(y, lambda, hy - (h_bar + modulus * d2) + tol);
  }
  return rep;
}

ViolationReport check_diff_characterization(const ObjectiveSpec& f, const QuasarCertificate& cert,
                                            const Sampler& sampler, long n, std::uint64_t seed) {
  cert.validate();
  const double h_bar = f.value_at(cert.xbar);
  Rng rng(seed);
  ViolationReport rep;
  for (long i = 0; i < n; ++i) {
    auto [y0, lambda] = sampler(rng);
    // find a nearby point where the central-difference stencil is stable
    Vector y = y0;
    bool usable = false;
    Vector grad;
    for (int attempt = 0; attempt < 5 && !usable; ++attempt) {
      try {
        Vector g1 = finite_diff_gradient(f, y, 1e-6);
        Vector g2 = finite_diff_gradient(f, y, 2e-6);
        if (norm(sub(g1, g2)) <= 1e-4 * (1.0 + norm(g1))) {
          grad = std::move(g1);
          usable = true;
          break;
        }
      } catch (const std::domain_error&) {
        // stencil left the box; perturb and retry below
      }
      Vector p = rng.in_ball(y0, 1e-4);
      y = f.box ? project_box(p, *f.box) : p;
    }
    if (!usable) continue;  // kink that resisted perturbation: skip

    const double hy = f.value_at(y);
    const double d2 = dot(sub(y, cert.xbar), sub(y, cert.xbar));
    const double rhs = hy + dot(grad, sub(cert.xbar, y)) / cert.kappa + cert.gamma / 2.0 * d2;
    const double tol = 1e-5 * (1.0 + std::abs(hy));
    rep.note(y, lambda, h_bar - rhs + tol);
  }
  return rep;
}

double check_supercoercive(const ObjectiveSpec& f, const std::vector<double>& radii,
                           int samples_per_radius, std::uint64_t seed) {
  if (radii.empty()) throw std::invalid_argument("check_supercoercive: empty radius list");
  for (size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("check_supercoercive: radii must be increasing");
    }
  }
  Rng rng(seed);
  double ratio_at_largest = kInf;
  for (double r : radii) {
    double worst = kInf;
    for (int s = 0; s < samples_per_radius; ++s) {
      Vector x = scale(r, rng.on_sphere(f.dim));
      if (f.box) {
        x = project_box(x, *f.box);
        const double nx = norm(x);
        if (!(nx > 0.0)) continue;
        worst = std::min(worst, f.value_at(x) / (nx * nx));
        continue;
      }
      worst = std::min(worst, f.value_at(x) / (r * r));
    }
    ratio_at_largest = worst;
  }
  return ratio_at_largest;
}

double theoretical_rate(double kappa, double gamma, double beta_lower) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw std::invalid_argument("theoretical_rate: kappa must lie in (0,1]");
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("theoretical_rate: gamma must be > 0");
  if (!(beta_lower > 0.0)) throw std::invalid_argument("theoretical_rate: beta_lower must be > 0");
  const double q = kappa * beta_lower * gamma;
  return 1.0 / std::sqrt(1.0 + q + kappa * q / (2.0 - kappa));
}

long iteration_bound_strong(double eps, double kappa, double gamma, double beta_lower,
                            double dist0) {
  if (!(eps > 0.0) || !(dist0 > 0.0)) {
    throw std::invalid_argument("iteration_bound_strong: eps and dist0 must be > 0");
  }
  if (dist0 <= eps) return 0;
  const double rate = theoretical_rate(kappa, gamma, beta_lower);
  const double bound = (std::log(1.0 / eps) + std::log(dist0)) / std::log(1.0 / rate);
  return std::max(0L, static_cast<long>(std::ceil(bound)));
}

long iteration_bound_quasar(double eps, QuasarBoundKind kind, double beta_lower,
                            double beta_upper, double kappa, double dist0_or_gap0) {
  if (!(eps > 0.0)) throw std::invalid_argument("iteration_bound_quasar: eps must be > 0");
  if (!(dist0_or_gap0 >= 0.0)) {
    throw std::invalid_argument("iteration_bound_quasar: dist0/gap0 must be >= 0");
  }
  if (dist0_or_gap0 == 0.0) return 0;
  double bound = 0.0;
  if (kind == QuasarBoundKind::step) {
    if (!(beta_upper > 0.0)) {
      throw std::invalid_argument("iteration_bound_quasar: beta_upper must be > 0");
    }
    bound = 2.0 * beta_upper * dist0_or_gap0 / (eps * eps);
  } else {
    if (!(beta_lower > 0.0) || !(kappa > 0.0 && kappa <= 1.0)) {
      throw std::invalid_argument("iteration_bound_quasar: need beta_lower > 0, kappa in (0,1]");
    }
    bound = dist0_or_gap0 * dist0_or_gap0 / (2.0 * kappa * beta_lower * eps);
  }
  return static_cast<long>(std::ceil(bound));
}

std::pair<long, long> iteration_bound_strong_value_readings(double eps, double kappa, double gamma,
                                                            double beta_lower, double dist0) {
  if (!(eps > 0.0) || !(dist0 > 0.0)) {
    throw std::invalid_argument("iteration_bound_strong_value_readings: eps, dist0 must be > 0");
  }
  const double denom = std::log(1.0 / theoretical_rate(kappa, gamma, beta_lower));
  auto bound_for = [&](double numerator_dist) {
    const double arg = numerator_dist / (2.0 * kappa * beta_lower);
    const double b = (std::log(1.0 / eps) + std::log(arg)) / denom + 1.0;
    return std::max(0L, static_cast<long>(std::ceil(b)));
  };
  return {bound_for(dist0), bound_for(dist0 * dist0)};
}

ViolationReport check_trace_linear(const ObjectiveSpec& f, const SolverTrace& trace,
                                   const QuasarCertificate& cert, double beta_lower,
                                   double tail_fraction) {
  cert.validate();
  if (!trace.distances_to_ref) {
    throw std::invalid_argument("check_trace_linear: trace lacks distances_to_ref");
  }
  const auto& d = *trace.distances_to_ref;
  const double rate = theoretical_rate(cert.kappa, cert.gamma, beta_lower);
  const long n_steps = static_cast<long>(d.size()) - 1;
  const long start = n_steps - static_cast<long>(std::floor(tail_fraction * n_steps));
  ViolationReport rep;
  for (long k = start; k < n_steps; ++k) {
    if (d[k] <= 1e-12) {  // distance at solver resolution; ratio is noise
      ++rep.n_samples;
      continue;
    }
    const double slack = (rate + 1e-6) * d[k] - d[k + 1];
    rep.note(trace.iterates[k], static_cast<double>(k), slack);
  }
  // value decay, same flavor as the sublinear bound
  const double h_bar = f.value_at(cert.xbar);
  const double d0 = d.front();
  for (size_t N = 1; N < trace.values.size(); ++N) {
    const double bound = d0 * d0 / (2.0 * cert.kappa * beta_lower * static_cast<double>(N));
    const double tol = 1e-9 * (1.0 + std::abs(trace.values[N]));
    rep.note(trace.iterates[N], static_cast<double>(N),
             bound - (trace.values[N] - h_bar) + tol);
  }
  return rep;
}

ViolationReport check_trace_sublinear(const ObjectiveSpec& f, const SolverTrace& trace,
                                      const QuasarCertificate& cert, double beta_lower) {
  cert.validate();
  if (!(beta_lower > 0.0)) {
    throw std::invalid_argument("check_trace_sublinear: beta_lower must be > 0");
  }
  const double h_bar = f.value_at(cert.xbar);
  const double d0 = dist(trace.iterates.front(), cert.xbar);
  ViolationReport rep;
  for (size_t N = 1; N < trace.values.size(); ++N) {
    const double bound = d0 * d0 / (2.0 * cert.kappa * beta_lower * static_cast<double>(N));
    const double tol = 1e-9 * (1.0 + std::abs(trace.values[N]));
    rep.note(trace.iterates[N], static_cast<double>(N),
             bound - (trace.values[N] - h_bar) + tol);
  }
  // Fejer monotone distances to xbar
  for (size_t k = 0; k + 1 < trace.iterates.size(); ++k) {
    const double dk = dist(trace.iterates[k], cert.xbar);
    const double dk1 = dist(trace.iterates[k + 1], cert.xbar);
    const double tol = 1e-9 * (1.0 + dk);
    rep.note(trace.iterates[k + 1], static_cast<double>(k), dk - dk1 + tol);
  }
  return rep;
}

double bisect_max_kappa(const ObjectiveSpec& f, const Vector& xbar, double gamma,
                        const Sampler& sampler, long n_per_probe, std::uint64_t seed,
                        int rounds) {
  double lo = 0.0, hi = 1.0;  // lo: last clean kappa (0 trivially holds)
  for (int r = 0; r < rounds; ++r) {
    const double mid = 0.5 * (lo + hi);
    QuasarCertificate cert{mid, gamma, xbar};
    if (check_quasar_inequality(f, cert, sampler, n_per_probe, seed).clean()) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace ppaq
