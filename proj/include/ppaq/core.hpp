#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppaq {

/// Dense fixed-dimension vector. Dimensions stay small (n <= ~100),
/// so no sparse or expression-template machinery.
using Vector = std::vector<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const Vector& x);
void require_finite(const Vector& x, const char* what);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& x);
double norm_inf(const Vector& x);
double dist(const Vector& a, const Vector& b);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(double t, const Vector& x);
// a + t*b
Vector axpy(const Vector& a, double t, const Vector& b);

/// Dense row-major square matrix.
struct Matrix {
  int n = 0;
  std::vector<double> data;

  Matrix() = default;
  explicit Matrix(int n_, double fill = 0.0) : n(n_), data(static_cast<size_t>(n_) * n_, fill) {}

  double& operator()(int i, int j) { return data[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return data[static_cast<size_t>(i) * n + j]; }

  static Matrix identity(int n);
};

Vector matvec(const Matrix& A, const Vector& x);

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Returns false when A is numerically singular.
bool solve_linear(Matrix A, Vector b, Vector& x);

/// Componentwise box [lower, upper]. Infinite entries mean unbounded;
/// serialized artifacts write them as the strings "-inf"/"inf".
struct BoxConstraint {
  Vector lower;
  Vector upper;

  BoxConstraint() = default;
  BoxConstraint(Vector lo, Vector up);

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Vector& x, double tol = 0.0) const;
  bool bounded() const;

  static BoxConstraint cube(int n, double lo, double up);
  /// Nonnegative orthant in n dimensions.
  static BoxConstraint nonneg(int n);
};

/// Componentwise clamp of x into the box.
Vector project_box(const Vector& x, const BoxConstraint& box);

/// A nonsmooth objective h: value, one Clarke-subdifferential element,
/// optionally one element of the generalized Jacobian of the Clarke
/// selection (used by semismooth Newton), and an optional box domain.
///
/// At nondifferentiable points clarke_element_at returns the gradient of
/// one active smooth branch, chosen by a deterministic tie-break (lowest
/// branch index among those attaining the max/min), so runs are
/// reproducible. Evaluations are pure and safe to share across threads.
struct ObjectiveSpec {
  int dim = 0;
  std::function<double(const Vector&)> value_at;
  std::function<Vector(const Vector&)> clarke_element_at;
  std::function<Matrix(const Vector&)> clarke_jacobian_at;  // may be empty
  std::optional<BoxConstraint> box;
  std::string name;

  bool has_jacobian() const { return static_cast<bool>(clarke_jacobian_at); }
};

/// A (kappa, gamma, xbar) triple claiming (strong) quasar-convexity of an
/// objective with respect to the minimizer xbar. gamma > 0 claims a unique
/// minimizer.
struct QuasarCertificate {
  double kappa = 1.0;
  double gamma = 0.0;
  Vector xbar;

  void validate() const;
};

/// Central-difference gradient estimate, componentwise
/// (f(x+h e_i) - f(x-h e_i)) / (2h). Throws std::domain_error when a
/// stencil point leaves the objective's box.
Vector finite_diff_gradient(const ObjectiveSpec& f, const Vector& x, double step);

}  // namespace ppaq
