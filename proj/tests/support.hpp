#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "curverep/exact.hpp"
#include "curverep/numpoly.hpp"

namespace testing {

using curverep::BiPoly;
using curverep::Complex;
using curverep::PlaneParametrization;
using curverep::Poly;
using curverep::RationalFunction;
namespace ex = curverep::exact;

// Small-integer generators; integer data keeps the exact oracle cheap and
// lets doubles represent every input coefficient exactly.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  ex::RatPoly ratpoly(int degree, int range = 5) {
    std::vector<ex::Rational> c(static_cast<std::size_t>(degree + 1));
    for (auto& x : c) x = integer(-range, range);
    if (c.back() == 0) c.back() = integer(0, 1) ? 1 : -1;
    return ex::RatPoly(c);
  }

  Poly poly(int degree, double range = 1.0) {
    std::vector<Complex> c(static_cast<std::size_t>(degree + 1));
    for (auto& x : c) x = real(-range, range);
    if (std::abs(c.back()) < 0.3) c.back() = 1.0;
    return Poly(c);
  }

  Poly complex_poly(int degree) {
    std::vector<Complex> c(static_cast<std::size_t>(degree + 1));
    for (auto& x : c) x = {real(-1, 1), real(-1, 1)};
    return Poly(c);
  }

  // Reduced rational function of exact degree `degree` with a denominator
  // that has no real roots in [-3, 3] when possible.
  ex::RatFunc ratfunc(int degree) {
    for (;;) {
      ex::RatFunc f{ratpoly(integer(0, degree)), ratpoly(integer(0, degree))};
      if (integer(0, 1)) f.num = ratpoly(degree);
      else f.den = ratpoly(degree);
      const ex::RatFunc r = f.reduced();
      if (r.degree() == degree && !r.num.is_zero()) return r;
    }
  }

  // Multiplies every coefficient by (1 + delta) with |delta| <= rel.
  Poly perturb(const Poly& p, double rel) {
    std::vector<Complex> c = p.coeffs();
    for (auto& x : c) x *= 1.0 + real(-rel, rel);
    return Poly(c);
  }
};

inline Poly to_poly(const ex::RatPoly& p) { return p.to_poly(); }

inline double max_component_distance(const PlaneParametrization& a, const PlaneParametrization& b, double d1,
                                     double d2, int n) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = d1 + (d2 - d1) * i / (n - 1);
    worst = std::max({worst, std::abs(a.x(t) - b.x(t)), std::abs(a.y(t) - b.y(t))});
  }
  return worst;
}

// Largest distance from a sampled point of `a` on [d1, d2] to the whole real
// trace of `b`, sampled at t = tan(theta).
inline double trace_distance(const PlaneParametrization& a, double d1, double d2, const PlaneParametrization& b,
                             int n = 401, int dense = 40000) {
  std::vector<std::pair<Complex, Complex>> pts;
  for (int i = 1; i < dense; ++i) {
    const auto [u, v] = b(std::tan(std::numbers::pi * (static_cast<double>(i) / dense - 0.5)));
    if (std::isfinite(std::abs(u)) && std::isfinite(std::abs(v))) pts.emplace_back(u, v);
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = a(d1 + (d2 - d1) * i / (n - 1));
    double best = INFINITY;
    for (const auto& [u, v] : pts) best = std::min(best, std::hypot(std::abs(x - u), std::abs(y - v)));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace testing
