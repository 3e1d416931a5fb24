#pragma once

#include <cstdint>
#include <string>

#include "ppaq/core.hpp"
#include "ppaq/rng.hpp"

#include "json.hpp"

namespace ppaq {

// ---------------------------------------------------------------------------
// Plain evaluators

/// (sum |x_i|^p)^(1/p) for 0 < p < 1.
double lp_quasinorm(const Vector& x, double p);

/// CES value (alpha_1 x_1^beta + ... + alpha_n x_n^beta)^(1/beta) on the
/// nonnegative orthant. For beta < 0 the value is continuously extended by 0
/// whenever some x_i = 0.
double ces(const Vector& x, const Vector& alphas, double beta);

/// min{(1/alpha_1) x_1, ..., (1/alpha_n) x_n}^alpha_exp on the nonnegative
/// orthant.
double leontief(const Vector& x, const Vector& alphas, double alpha_exp);

/// ||x||^alpha for 0 < alpha <= 2.
double euclid_power(const Vector& x, double alpha);

// ---------------------------------------------------------------------------
// Auxiliary modulus machinery for positively alpha-homogeneous functions.

/// theta_alpha(lambda) = (1 - (1-lambda)^alpha) / lambda on (0,1].
/// Exactly 1 for alpha = 1.
double theta_alpha(double lambda, double alpha);

/// Q_{alpha,kappa}(lambda) = (theta_alpha(lambda) - kappa) /
/// ((1 - lambda/(2-kappa)) * kappa/2), with the continuous extension
/// Q_{alpha,1}(1) = 2. Requires kappa in (0,alpha) when alpha <= 1 and
/// kappa in (0,1] when alpha > 1.
double q_alpha_kappa(double lambda, double alpha, double kappa);

/// inf over lambda in (0,1] of theta_alpha: alpha when alpha <= 1, else 1.
double theta_infimum(double alpha);

/// inf over lambda in (0,1] of Q_{alpha,kappa}: 2(alpha-kappa)/kappa when
/// alpha < 2, 2(2-kappa)/kappa when alpha >= 2.
double q_infimum(double alpha, double kappa);

/// Shape data of an alpha-homogeneous function on a compact set K:
/// alpha-homogeneity degree, sphere radius c, M = sup ||x|| over K, and
/// S_c = min of the function on the radius-c sphere in K.
struct HomogeneousParams {
  double alpha = 0.0;
  double c = 0.0;
  double M = 0.0;
  double S_c = 0.0;

  void validate() const;
};

/// Certified strong quasar-convexity modulus gamma for the given kappa.
/// Throws for alpha > 2 (no strong modulus exists in that regime).
double strong_modulus(const HomogeneousParams& params, double kappa);

/// S_c by dense sampling of the radius-c sphere: a uniform angle grid in
/// 2-D, golden-angle (Fibonacci) points in higher dimension. Sampling is
/// deterministic.
double sphere_min(const ObjectiveSpec& f, double c, int samples);

// ---------------------------------------------------------------------------
// Gallery objectives

ObjectiveSpec make_lp_quasinorm(int dim, double p);
/// sum |x_i|^p for 0 < p < 1 (no outer 1/p root): the p-homogeneous
/// regularization layer. Unlike the 1-homogeneous quasinorm, its quasar
/// modulus range is kappa in (0,p).
ObjectiveSpec make_lp_regularizer(int dim, double p);
ObjectiveSpec make_ces(const Vector& alphas, double beta);
ObjectiveSpec make_leontief(const Vector& alphas, double alpha_exp);
ObjectiveSpec make_euclid_power(int dim, double alpha);

/// ||x||^2, smooth reference objective for tests and the CLI.
ObjectiveSpec make_quadratic(int dim);

/// sqrt(|x|) in one dimension; its prox on [-2,2] at z = 3/2 is the
/// two-point set {0, 1}.
ObjectiveSpec make_sqrt_abs();

// ---------------------------------------------------------------------------
// Randomized product families (2-D): h(x) = h1(||x||) * h2(x/||x||), with
// h(0) = 0, where h2 is a random trigonometric layer
//   h2(w) = 1 + (1/4N) sum_i (a_i sin^2(b_i w_1) + c_i cos^2(d_i w_2)).
// Family 1 uses h1(r) = max{q1 r^2, q2 r^2 - k} (strongly quasar-convex,
// kappa = 1, gamma = 2 q1); family 2 uses h1(r) = max{r, q r - k}
// (quasar-convex, gamma = 0).

enum class ExampleId { example1 = 1, example2 = 2 };

struct RandomFamilyParams {
  ExampleId example = ExampleId::example1;
  int N = 0;
  Vector a, b, c, d;      // trig coefficients, |a|=|b|=|c|=|d|=N
  double q1 = 0.0, q2 = 0.0;  // family 1
  double q = 0.0;             // family 2
  int k = 0;
  std::uint64_t seed = 0;
  /// Evaluate the trig layer at raw coordinates instead of x/||x||.
  bool raw_coords = false;

  void validate() const;

  /// Draws a_i, c_i ~ U[0,20] and b_i, d_i ~ U[-25,25] from `rng`, in the
  /// order a_i, b_i, c_i, d_i per term.
  static RandomFamilyParams draw_example1(int N, double q1, double q2, int k,
                                          std::uint64_t seed, Rng& rng);
  static RandomFamilyParams draw_example2(int N, double q, int k,
                                          std::uint64_t seed, Rng& rng);
};

ObjectiveSpec make_example1(const RandomFamilyParams& params);
ObjectiveSpec make_example2(const RandomFamilyParams& params);
/// Dispatch on params.example.
ObjectiveSpec make_example(const RandomFamilyParams& params);

/// Trig layer value at (possibly normalized) coordinates w.
double trig_layer(const RandomFamilyParams& params, const Vector& w);

nlohmann::json params_to_json(const RandomFamilyParams& params);
RandomFamilyParams params_from_json(const nlohmann::json& j);

}  // namespace ppaq
