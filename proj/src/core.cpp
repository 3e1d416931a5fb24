#include "ppaq/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace ppaq {

bool all_finite(const Vector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_finite(const Vector& x, const char* what) {
  if (!all_finite(x)) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& x) { return std::sqrt(dot(x, x)); }

double norm_inf(const Vector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double dist(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vector add(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(double t, const Vector& x) {
  Vector r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = t * x[i];
  return r;
}

Vector axpy(const Vector& a, double t, const Vector& b) {
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * b[i];
  return r;
}

Matrix Matrix::identity(int n) {
  Matrix I(n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

Vector matvec(const Matrix& A, const Vector& x) {
  Vector y(A.n, 0.0);
  for (int i = 0; i < A.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.n; ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

bool solve_linear(Matrix A, Vector b, Vector& x) {
  const int n = A.n;
  if (static_cast<int>(b.size()) != n) return false;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(A(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(A(r, col)) > best) {
        best = std::abs(A(r, col));
        piv = r;
      }
    }
    if (!(best > 1e-300) || !std::isfinite(best)) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = A(r, col) / A(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) A(r, j) -= f * A(col, j);
      b[r] -= f * b[col];
    }
  }

  x.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

BoxConstraint::BoxConstraint(Vector lo, Vector up) : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("BoxConstraint: dimension mismatch");
  }
  for (size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i]) {
      throw std::invalid_argument("BoxConstraint: empty box");
    }
  }
}

bool BoxConstraint::contains(const Vector& x, double tol) const {
  for (size_t i = 0; i < lower.size(); ++i) {
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  }
  return true;
}

bool BoxConstraint::bounded() const {
  for (size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) return false;
  }
  return true;
}

BoxConstraint BoxConstraint::cube(int n, double lo, double up) {
  return BoxConstraint(Vector(n, lo), Vector(n, up));
}

BoxConstraint BoxConstraint::nonneg(int n) {
  return BoxConstraint(Vector(n, 0.0), Vector(n, kInf));
}

Vector project_box(const Vector& x, const BoxConstraint& box) {
  Vector r(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    r[i] = std::min(std::max(x[i], box.lower[i]), box.upper[i]);
  }
  return r;
}

void QuasarCertificate::validate() const {
  if (!(kappa > 0.0) || kappa > 1.0) {
    throw std::invalid_argument("QuasarCertificate: kappa must lie in (0,1]");
  }
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("QuasarCertificate: gamma must be >= 0");
  }
  require_finite(xbar, "QuasarCertificate.xbar");
}

Vector finite_diff_gradient(const ObjectiveSpec& f, const Vector& x, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_diff_gradient: step must be > 0");
  Vector g(x.size());
  Vector xp = x, xm = x;
  for (size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + step;
    xm[i] = x[i] - step;
    if (f.box && (!f.box->contains(xp) || !f.box->contains(xm))) {
      throw std::domain_error("finite_diff_gradient: stencil leaves the box domain");
    }
    g[i] = (f.value_at(xp) - f.value_at(xm)) / (2.0 * step);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

}  // namespace ppaq
