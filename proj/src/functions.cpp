#include "ppaq/functions.hpp"

#include <algorithm>
#include <cmath>

namespace ppaq {

namespace {

constexpr double kBigDiag = 1e12;  // Jacobian sentinel at kink points

Matrix big_diag(int n) {
  Matrix V(n);
  for (int i = 0; i < n; ++i) V(i, i) = kBigDiag;
  return V;
}

void require_nonneg(const Vector& x) {
  for (double v : x) {
    if (v < 0.0) throw std::domain_error("negative component outside the nonnegative orthant");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Plain evaluators

double lp_quasinorm(const Vector& x, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("lp_quasinorm: p must lie in (0,1)");
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

double ces(const Vector& x, const Vector& alphas, double beta) {
  if (beta == 0.0) throw std::invalid_argument("ces: beta must be nonzero");
  if (x.size() != alphas.size()) throw std::invalid_argument("ces: dimension mismatch");
  require_nonneg(x);
  if (beta < 0.0) {
    for (double v : x) {
      if (v == 0.0) return 0.0;  // continuous extension off the strict orthant
    }
  }
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += alphas[i] * std::pow(x[i], beta);
  return std::pow(s, 1.0 / beta);
}

double leontief(const Vector& x, const Vector& alphas, double alpha_exp) {
  if (x.size() != alphas.size()) throw std::invalid_argument("leontief: dimension mismatch");
  require_nonneg(x);
  double m = kInf;
  for (size_t i = 0; i < x.size(); ++i) m = std::min(m, x[i] / alphas[i]);
  return std::pow(m, alpha_exp);
}

double euclid_power(const Vector& x, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("euclid_power: alpha must lie in (0,2]");
  }
  return std::pow(norm(x), alpha);
}

// ---------------------------------------------------------------------------
// theta / Q machinery

double theta_alpha(double lambda, double alpha) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("theta_alpha: lambda must lie in (0,1]");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("theta_alpha: alpha must be > 0");
  if (alpha == 1.0) return 1.0;
  if (lambda == 1.0) return 1.0;
  // 1 - (1-lambda)^alpha via expm1/log1p, stable down to tiny lambda
  return -std::expm1(alpha * std::log1p(-lambda)) / lambda;
}

namespace {
void check_kappa_range(double alpha, double kappa) {
  const bool ok = (alpha <= 1.0) ? (kappa > 0.0 && kappa < alpha)
                                 : (kappa > 0.0 && kappa <= 1.0);
  if (!ok) throw std::invalid_argument("kappa outside the admissible range for this alpha");
}
}  // namespace

double q_alpha_kappa(double lambda, double alpha, double kappa) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("q_alpha_kappa: lambda must lie in (0,1]");
  }
  check_kappa_range(alpha, kappa);
  if (kappa == 1.0 && lambda == 1.0) return 2.0;  // removable singularity
  const double denom = (1.0 - lambda / (2.0 - kappa)) * kappa / 2.0;
  return (theta_alpha(lambda, alpha) - kappa) / denom;
}

double theta_infimum(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("theta_infimum: alpha must be > 0");
  return alpha <= 1.0 ? alpha : 1.0;
}

double q_infimum(double alpha, double kappa) {
  check_kappa_range(alpha, kappa);
  if (alpha < 2.0) return 2.0 * (alpha - kappa) / kappa;
  return 2.0 * (2.0 - kappa) / kappa;
}

void HomogeneousParams::validate() const {
  if (!(alpha > 0.0 && c > 0.0 && M > 0.0 && S_c > 0.0)) {
    throw std::invalid_argument("HomogeneousParams: alpha, c, M, S_c must be > 0");
  }
  if (c > M) throw std::invalid_argument("HomogeneousParams: c must not exceed M");
}

double strong_modulus(const HomogeneousParams& params, double kappa) {
  params.validate();
  const double alpha = params.alpha;
  if (alpha > 2.0) {
    throw std::invalid_argument("strong_modulus: no strong modulus exists for alpha > 2");
  }
  check_kappa_range(alpha, kappa);
  if (alpha == 2.0) {
    return 2.0 * (2.0 - kappa) * params.S_c / (kappa * params.c * params.c);
  }
  return 2.0 * (alpha - kappa) * params.S_c /
         (kappa * std::pow(params.c, alpha) * std::pow(params.M, 2.0 - alpha));
}

double sphere_min(const ObjectiveSpec& f, double c, int samples) {
  if (samples < 1) throw std::invalid_argument("sphere_min: samples must be >= 1");
  double best = kInf;
  if (f.dim == 1) {
    for (double s : {-c, c}) {
      Vector x{s};
      if (f.box && !f.box->contains(x)) continue;
      best = std::min(best, f.value_at(x));
    }
    return best;
  }
  if (f.dim == 2) {
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int i = 0; i < samples; ++i) {
      const double t = two_pi * i / samples;
      Vector x{c * std::cos(t), c * std::sin(t)};
      if (f.box && !f.box->contains(x)) continue;
      best = std::min(best, f.value_at(x));
    }
    return best;
  }
  Rng rng(0xF1B0CC1DULL);  // fixed seed keeps the sampling deterministic
  for (int i = 0; i < samples; ++i) {
    Vector x = scale(c, rng.on_sphere(f.dim));
    if (f.box && !f.box->contains(x)) continue;
    best = std::min(best, f.value_at(x));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Gallery objectives

ObjectiveSpec make_lp_quasinorm(int dim, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("make_lp_quasinorm: p must lie in (0,1)");
  ObjectiveSpec f;
  f.dim = dim;
  f.name = "lp";
  f.value_at = [p](const Vector& x) { return lp_quasinorm(x, p); };
  f.clarke_element_at = [p, dim](const Vector& x) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    Vector g(dim, 0.0);
    if (s == 0.0) return g;  // 0 is a minimizer; 0 is a valid element there
    const double outer = std::pow(s, 1.0 / p - 1.0);
    for (int i = 0; i < dim; ++i) {
      if (x[i] != 0.0) {
        g[i] = outer * std::pow(std::abs(x[i]), p - 1.0) * (x[i] > 0.0 ? 1.0 : -1.0);
      }
    }
    return g;
  };
  f.clarke_jacobian_at = [p, dim](const Vector& x) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    if (s == 0.0) return big_diag(dim);
    Matrix H(dim);
    const double o1 = std::pow(s, 1.0 / p - 1.0);
    const double o2 = (1.0 - p) * std::pow(s, 1.0 / p - 2.0);
    for (int i = 0; i < dim; ++i) {
      if (x[i] == 0.0) {
        H(i, i) = kBigDiag;
        continue;
      }
      const double gi = std::pow(std::abs(x[i]), p - 1.0) * (x[i] > 0.0 ? 1.0 : -1.0);
      for (int j = 0; j < dim; ++j) {
        if (x[j] == 0.0) continue;
        const double gj = std::pow(std::abs(x[j]), p - 1.0) * (x[j] > 0.0 ? 1.0 : -1.0);
        H(i, j) = o2 * gi * gj;
      }
      H(i, i) += o1 * (p - 1.0) * std::pow(std::abs(x[i]), p - 2.0);
    }
    return H;
  };
  return f;
}

ObjectiveSpec make_lp_regularizer(int dim, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("make_lp_regularizer: p must lie in (0,1)");
  ObjectiveSpec f;
  f.dim = dim;
  f.name = "lp_reg";
  f.value_at = [p](const Vector& x) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return s;
  };
  f.clarke_element_at = [p, dim](const Vector& x) {
    Vector g(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
      if (x[i] != 0.0) {
        g[i] = p * std::pow(std::abs(x[i]), p - 1.0) * (x[i] > 0.0 ? 1.0 : -1.0);
      }
    }
    return g;
  };
  f.clarke_jacobian_at = [p, dim](const Vector& x) {
    Matrix H(dim);
    for (int i = 0; i < dim; ++i) {
      H(i, i) = x[i] == 0.0 ? kBigDiag
                            : p * (p - 1.0) * std::pow(std::abs(x[i]), p - 2.0);
    }
    return H;
  };
  return f;
}

ObjectiveSpec make_ces(const Vector& alphas, double beta) {
  if (beta == 0.0) throw std::invalid_argument("make_ces: beta must be nonzero");
  const int dim = static_cast<int>(alphas.size());
  ObjectiveSpec f;
  f.dim = dim;
  f.name = "ces";
  f.box = BoxConstraint::nonneg(dim);
  f.value_at = [alphas, beta](const Vector& x) { return ces(x, alphas, beta); };
  f.clarke_element_at = [alphas, beta, dim](const Vector& x) {
    require_nonneg(x);
    Vector g(dim, 0.0);
    bool boundary = false;
    for (double v : x) boundary = boundary || (v == 0.0);
    if (boundary) return g;  // deterministic selection on the orthant boundary
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += alphas[i] * std::pow(x[i], beta);
    const double outer = std::pow(s, 1.0 / beta - 1.0);
    for (int i = 0; i < dim; ++i) g[i] = outer * alphas[i] * std::pow(x[i], beta - 1.0);
    return g;
  };
  f.clarke_jacobian_at = [alphas, beta, dim](const Vector& x) {
    for (double v : x) {
      if (v <= 0.0) return big_diag(dim);
    }
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += alphas[i] * std::pow(x[i], beta);
    Matrix H(dim);
    const double o1 = std::pow(s, 1.0 / beta - 1.0);
    const double o2 = (1.0 - beta) * std::pow(s, 1.0 / beta - 2.0);
    for (int i = 0; i < dim; ++i) {
      const double gi = alphas[i] * std::pow(x[i], beta - 1.0);
      for (int j = 0; j < dim; ++j) {
        const double gj = alphas[j] * std::pow(x[j], beta - 1.0);
        H(i, j) = o2 * gi * gj;
      }
      H(i, i) += o1 * alphas[i] * (beta - 1.0) * std::pow(x[i], beta - 2.0);
    }
    return H;
  };
  return f;
}

ObjectiveSpec make_leontief(const Vector& alphas, double alpha_exp) {
  if (!(alpha_exp > 0.0)) throw std::invalid_argument("make_leontief: alpha_exp must be > 0");
  const int dim = static_cast<int>(alphas.size());
  ObjectiveSpec f;
  f.dim = dim;
  f.name = "leontief";
  f.box = BoxConstraint::nonneg(dim);
  f.value_at = [alphas, alpha_exp](const Vector& x) { return leontief(x, alphas, alpha_exp); };
  f.clarke_element_at = [alphas, alpha_exp, dim](const Vector& x) {
    require_nonneg(x);
    int jmin = 0;
    double m = x[0] / alphas[0];
    for (int i = 1; i < dim; ++i) {
      const double v = x[i] / alphas[i];
      if (v < m) {  // lowest index wins ties
        m = v;
        jmin = i;
      }
    }
    Vector g(dim, 0.0);
    if (m == 0.0) return g;  // every such point is a minimizer
    g[jmin] = alpha_exp * std::pow(m, alpha_exp - 1.0) / alphas[jmin];
    return g;
  };
  f.clarke_jacobian_at = [alphas, alpha_exp, dim](const Vector& x) {
    int jmin = 0;
    double m = x[0] / alphas[0];
    for (int i = 1; i < dim; ++i) {
      const double v = x[i] / alphas[i];
      if (v < m) {
        m = v;
        jmin = i;
      }
    }
    if (m <= 0.0) return big_diag(dim);
    Matrix H(dim);
    H(jmin, jmin) = alpha_exp * (alpha_exp - 1.0) * std::pow(m, alpha_exp - 2.0) /
                    (alphas[jmin] * alphas[jmin]);
    return H;
  };
  return f;
}

ObjectiveSpec make_euclid_power(int dim, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("make_euclid_power: alpha must lie in (0,2]");
  }
  ObjectiveSpec f;
  f.dim = dim;
  f.name = "euclid_power";
  f.value_at = [alpha](const Vector& x) { return euclid_power(x, alpha); };
  f.clarke_element_at = [alpha, dim](const Vector& x) {
    const double r = norm(x);
    if (r == 0.0) return Vector(dim, 0.0);
    return scale(alpha * std::pow(r, alpha - 2.0), x);
  };
  f.clarke_jacobian_at = [alpha, dim](const Vector& x) {
    const double r = norm(x);
    if (r == 0.0) {
      if (alpha == 2.0) {
        Matrix H(dim);
        for (int i = 0; i < dim; ++i) H(i, i) = 2.0;
        return H;
      }
      return big_diag(dim);
    }
    Matrix H(dim);
    const double c1 = alpha * std::pow(r, alpha - 2.0);
    const double c2 = alpha * (alpha - 2.0) * std::pow(r, alpha - 4.0);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) H(i, j) = c2 * x[i] * x[j];
      H(i, i) += c1;
    }
    return H;
  };
  return f;
}

ObjectiveSpec make_quadratic(int dim) {
  ObjectiveSpec f;
  f.dim = dim;
  f.name = "quadratic";
  f.value_at = [](const Vector& x) { return dot(x, x); };
  f.clarke_element_at = [](const Vector& x) { return scale(2.0, x); };
  f.clarke_jacobian_at = [dim](const Vector&) {
    Matrix H(dim);
    for (int i = 0; i < dim; ++i) H(i, i) = 2.0;
    return H;
  };
  return f;
}

ObjectiveSpec make_sqrt_abs() {
  ObjectiveSpec f;
  f.dim = 1;
  f.name = "sqrt_abs";
  f.value_at = [](const Vector& x) { return std::sqrt(std::abs(x[0])); };
  f.clarke_element_at = [](const Vector& x) {
    if (x[0] == 0.0) return Vector{0.0};  // 0 is the minimizer
    const double s = x[0] > 0.0 ? 1.0 : -1.0;
    return Vector{0.5 * s / std::sqrt(std::abs(x[0]))};
  };
  f.clarke_jacobian_at = [](const Vector& x) {
    Matrix V(1);
    V(0, 0) = x[0] == 0.0 ? kBigDiag : -0.25 * std::pow(std::abs(x[0]), -1.5);
    return V;
  };
  return f;
}

// ---------------------------------------------------------------------------
// Randomized product families

void RandomFamilyParams::validate() const {
  if (N < 1) throw std::invalid_argument("RandomFamilyParams: N must be >= 1");
  const auto sz = static_cast<size_t>(N);
  if (a.size() != sz || b.size() != sz || c.size() != sz || d.size() != sz) {
    throw std::invalid_argument("RandomFamilyParams: coefficient arrays must have length N");
  }
  if (k < 1) throw std::invalid_argument("RandomFamilyParams: k must be a positive integer");
  if (example == ExampleId::example1) {
    if (!(q2 > q1 && q1 > 0.0)) {
      throw std::invalid_argument("RandomFamilyParams: example 1 needs q2 > q1 > 0");
    }
  } else {
    if (!(q > 1.0)) throw std::invalid_argument("RandomFamilyParams: example 2 needs q > 1");
  }
}

RandomFamilyParams RandomFamilyParams::draw_example1(int N, double q1, double q2, int k,
                                                     std::uint64_t seed, Rng& rng) {
  RandomFamilyParams p;
  p.example = ExampleId::example1;
  p.N = N;
  p.q1 = q1;
  p.q2 = q2;
  p.k = k;
  p.seed = seed;
  p.a.resize(N);
  p.b.resize(N);
  p.c.resize(N);
  p.d.resize(N);
  for (int i = 0; i < N; ++i) {
    p.a[i] = rng.uniform(0.0, 20.0);
    p.b[i] = rng.uniform(-25.0, 25.0);
    p.c[i] = rng.uniform(0.0, 20.0);
    p.d[i] = rng.uniform(-25.0, 25.0);
  }
  p.validate();
  return p;
}

RandomFamilyParams RandomFamilyParams::draw_example2(int N, double q, int k,
                                                     std::uint64_t seed, Rng& rng) {
  RandomFamilyParams p;
  p.example = ExampleId::example2;
  p.N = N;
  p.q = q;
  p.k = k;
  p.seed = seed;
  p.a.resize(N);
  p.b.resize(N);
  p.c.resize(N);
  p.d.resize(N);
  for (int i = 0; i < N; ++i) {
    p.a[i] = rng.uniform(0.0, 20.0);
    p.b[i] = rng.uniform(-25.0, 25.0);
    p.c[i] = rng.uniform(0.0, 20.0);
    p.d[i] = rng.uniform(-25.0, 25.0);
  }
  p.validate();
  return p;
}

double trig_layer(const RandomFamilyParams& params, const Vector& w) {
  double s = 0.0;
  for (int i = 0; i < params.N; ++i) {
    const double sn = std::sin(params.b[i] * w[0]);
    const double cs = std::cos(params.d[i] * w[1]);
    s += params.a[i] * sn * sn + params.c[i] * cs * cs;
  }
  return 1.0 + s / (4.0 * params.N);
}

namespace {

// Radial factor h1(r) = max over branches of A r^2 + B r + C; at a branch
// tie the first branch supplies the derivative.
struct RadialBranches {
  double A1, B1, C1;
  double A2, B2, C2;

  void select(double r, double& val, double& d1, double& d2) const {
    const double v1 = A1 * r * r + B1 * r + C1;
    const double v2 = A2 * r * r + B2 * r + C2;
    if (v1 >= v2) {
      val = v1;
      d1 = 2.0 * A1 * r + B1;
      d2 = 2.0 * A1;
    } else {
      val = v2;
      d1 = 2.0 * A2 * r + B2;
      d2 = 2.0 * A2;
    }
  }
};

Vector layer_grad(const RandomFamilyParams& p, const Vector& w) {
  double g1 = 0.0, g2c = 0.0;
  for (int i = 0; i < p.N; ++i) {
    g1 += p.a[i] * p.b[i] * std::sin(2.0 * p.b[i] * w[0]);
    g2c -= p.c[i] * p.d[i] * std::sin(2.0 * p.d[i] * w[1]);
  }
  const double scale = 1.0 / (4.0 * p.N);
  return {scale * g1, scale * g2c};
}

Matrix layer_hess(const RandomFamilyParams& p, const Vector& w) {
  double h1 = 0.0, h2 = 0.0;
  for (int i = 0; i < p.N; ++i) {
    h1 += 2.0 * p.a[i] * p.b[i] * p.b[i] * std::cos(2.0 * p.b[i] * w[0]);
    h2 -= 2.0 * p.c[i] * p.d[i] * p.d[i] * std::cos(2.0 * p.d[i] * w[1]);
  }
  Matrix H(2);
  const double scale = 1.0 / (4.0 * p.N);
  H(0, 0) = scale * h1;
  H(1, 1) = scale * h2;
  return H;
}

ObjectiveSpec make_product_family(const RandomFamilyParams& params, RadialBranches h1,
                                  const char* name) {
  params.validate();
  ObjectiveSpec f;
  f.dim = 2;
  f.name = name;
  const bool raw = params.raw_coords;

  f.value_at = [params, h1, raw](const Vector& x) {
    const double r = norm(x);
    if (r == 0.0) return 0.0;
    const Vector w = raw ? x : scale(1.0 / r, x);
    double val, dr, drr;
    h1.select(r, val, dr, drr);
    return val * trig_layer(params, w);
  };

  f.clarke_element_at = [params, h1, raw](const Vector& x) {
    const double r = norm(x);
    if (r == 0.0) return Vector(2, 0.0);  // 0 is the minimizer
    const Vector u = scale(1.0 / r, x);
    const Vector w = raw ? x : u;
    double phi, dphi, ddphi;
    h1.select(r, phi, dphi, ddphi);
    const double t = trig_layer(params, w);
    const Vector g2 = layer_grad(params, w);
    Vector g = scale(dphi * t, u);
    if (raw) {
      return add(g, scale(phi, g2));
    }
    // tangential part: (phi/r) (I - u u^T) g2
    const double s = dot(u, g2);
    return add(g, scale(phi / r, sub(g2, scale(s, u))));
  };

  f.clarke_jacobian_at = [params, h1, raw](const Vector& x) {
    const double r = norm(x);
    if (r == 0.0) return big_diag(2);
    const Vector u = scale(1.0 / r, x);
    const Vector w = raw ? x : u;
    double phi, dphi, ddphi;
    h1.select(r, phi, dphi, ddphi);
    const double t = trig_layer(params, w);
    const Vector g2 = layer_grad(params, w);
    const Matrix H2 = layer_hess(params, w);
    Matrix P(2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) P(i, j) = (i == j ? 1.0 : 0.0) - u[i] * u[j];
    }
    Matrix V(2);
    if (raw) {
      // phi'' t uu^T + phi'(u g2^T + g2 u^T) + (phi' t / r) P + phi H2
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          V(i, j) = ddphi * t * u[i] * u[j] + dphi * (u[i] * g2[j] + g2[i] * u[j]) +
                    dphi * t / r * P(i, j) + phi * H2(i, j);
        }
      }
      return V;
    }
    const double s = dot(u, g2);
    const Vector v = sub(g2, scale(s, u));  // P g2
    const double cuv = dphi / r - phi / (r * r);
    // P H2 P
    Matrix PHP(2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) acc += P(i, a) * H2(a, b) * P(b, j);
        }
        PHP(i, j) = acc;
      }
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        V(i, j) = ddphi * t * u[i] * u[j] + cuv * (u[i] * v[j] + v[i] * u[j]) +
                  dphi * t / r * P(i, j) + phi / (r * r) * (PHP(i, j) - s * P(i, j));
      }
    }
    return V;
  };

  return f;
}

}  // namespace

ObjectiveSpec make_example1(const RandomFamilyParams& params) {
  if (params.example != ExampleId::example1) {
    throw std::invalid_argument("make_example1: params belong to example 2");
  }
  RadialBranches h1{params.q1, 0.0, 0.0, params.q2, 0.0, -static_cast<double>(params.k)};
  return make_product_family(params, h1, "example1");
}

ObjectiveSpec make_example2(const RandomFamilyParams& params) {
  if (params.example != ExampleId::example2) {
    throw std::invalid_argument("make_example2: params belong to example 1");
  }
  RadialBranches h1{0.0, 1.0, 0.0, 0.0, params.q, -static_cast<double>(params.k)};
  return make_product_family(params, h1, "example2");
}

ObjectiveSpec make_example(const RandomFamilyParams& params) {
  return params.example == ExampleId::example1 ? make_example1(params) : make_example2(params);
}

nlohmann::json params_to_json(const RandomFamilyParams& p) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["example"] = static_cast<int>(p.example);
  j["N"] = p.N;
  j["seed"] = p.seed;
  j["a"] = p.a;
  j["b"] = p.b;
  j["c"] = p.c;
  j["d"] = p.d;
  j["k"] = p.k;
  j["raw_coords"] = p.raw_coords;
  if (p.example == ExampleId::example1) {
    j["q1"] = p.q1;
    j["q2"] = p.q2;
  } else {
    j["q"] = p.q;
  }
  return j;
}

RandomFamilyParams params_from_json(const nlohmann::json& j) {
  RandomFamilyParams p;
  p.example = static_cast<ExampleId>(j.at("example").get<int>());
  p.N = j.at("N").get<int>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.a = j.at("a").get<Vector>();
  p.b = j.at("b").get<Vector>();
  p.c = j.at("c").get<Vector>();
  p.d = j.at("d").get<Vector>();
  p.k = j.at("k").get<int>();
  p.raw_coords = j.value("raw_coords", false);
  if (p.example == ExampleId::example1) {
    p.q1 = j.at("q1").get<double>();
    p.q2 = j.at("q2").get<double>();
  } else {
    p.q = j.at("q").get<double>();
  }
  p.validate();
  return p;
}

}  // namespace ppaq
