#pragma once

#include <cstdint>
#include <random>

#include "ppaq/core.hpp"

namespace ppaq {

/// splitmix64 step; used to expand one master seed into independent
/// per-instance stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for instance `idx` of the stream tagged `tag` under `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t idx) {
  return splitmix64(splitmix64(master ^ splitmix64(tag)) + idx);
}

/// mt19937_64 with a fixed 53-bit uniform mapping. All random draws in the
/// project go through this type so that identical seeds reproduce
/// bit-identical streams on every platform (std::uniform_real_distribution
/// is implementation-defined and is deliberately avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Vector uniform_vec(int n, double lo, double hi) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Uniform draw in the closed Euclidean ball around `center`
  /// (rejection from the bounding cube).
  Vector in_ball(const Vector& center, double radius) {
    const int n = static_cast<int>(center.size());
    while (true) {
      Vector d(n);
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        d[i] = uniform(-1.0, 1.0);
        s += d[i] * d[i];
      }
      if (s <= 1.0) {
        for (int i = 0; i < n; ++i) d[i] = center[i] + radius * d[i];
        return d;
      }
    }
  }

  /// Uniform direction on the unit sphere.
  Vector on_sphere(int n) {
    while (true) {
      Vector d(n);
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        d[i] = uniform(-1.0, 1.0);
        s += d[i] * d[i];
      }
      if (s > 1e-12 && s <= 1.0) {
        const double inv = 1.0 / std::sqrt(s);
        for (int i = 0; i < n; ++i) d[i] *= inv;
        return d;
      }
    }
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ppaq
