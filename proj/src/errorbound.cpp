#include "curverep/errorbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curverep/error.hpp"

namespace curverep {

namespace {

void check_interval(const IntervalSpec& in) {
  if (!(in.d1 < in.d2)) throw Error(ErrorCode::invalid_argument, "interval requires d1 < d2");
  if (in.grid_n < 2) throw Error(ErrorCode::invalid_argument, "interval grid needs at least 2 points");
}

double denominator_floor(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                         double t) {
  const Complex rt = r(t);
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2; ++k) {
    m = std::min(m, std::abs(p.component(k).den()(t)));
    m = std::min(m, std::abs(q.component(k).den()(rt)));
  }
  return m;
}

// num(a(r(t))) for a polynomial a, i.e. sum a_j M^j N^(deg a - j).
Poly compose_numerator(const Poly& a, const RationalFunction& r) {
  const int n = a.degree();
  Poly acc;
  for (int j = 0; j <= n; ++j) acc += a[j] * r.num().pow(j) * r.den().pow(n - j);
  return acc;
}

}  // namespace

double c_constant(double d, int ell, int deg_p) {
  if (ell < 1) throw Error(ErrorCode::invalid_argument, "c_constant: ell must be positive");
  const double inv = 1.0 / ell;
  if (std::abs(d - 1.0) <= 1e-12) return std::pow(static_cast<double>(ell) * deg_p, inv);
  if (d > 1.0) return std::pow(d, deg_p + 1) / std::pow(d - 1.0, inv);
  return 1.0 / std::pow(1.0 - d, inv);
}

BoundConstants bound_constants(const PlaneParametrization& p, const PlaneParametrization& q,
                               const RationalFunction& r, const IntervalSpec& interval) {
  check_interval(interval);
  BoundConstants bc;
  bc.ell = r.degree();
  bc.deg_p = p.degree();
  bc.d = std::max(std::abs(interval.d1), std::abs(interval.d2));
  const int n = interval.grid_n;
  const double h = (interval.d2 - interval.d1) / (n - 1);
  auto f = [&](double t) { return denominator_floor(p, q, r, t); };
  int best = 0;
  double fbest = f(interval.d1);
  for (int i = 1; i < n; ++i) {
    const double v = f(i == n - 1 ? interval.d2 : interval.d1 + i * h);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  double lo = std::max(interval.d1, interval.d1 + (best - 1) * h);
  double hi = std::min(interval.d2, interval.d1 + (best + 1) * h);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = f(b);
    }
  }
  bc.M = std::min({fbest, fa, fb});
  if (!(bc.M >= 1e-9)) throw Error(ErrorCode::pole_in_interval, "interval touches a pole (M below 1e-9)");
  bc.C = c_constant(bc.d, bc.ell, bc.deg_p);
  return bc;
}

double corollary_bounds(double d, int deg_p) {
  if (d <= 1.0) throw Error(ErrorCode::not_applicable, "corollary bound needs d > 1");
  return d >= 2.0 ? std::pow(d, deg_p + 1) : std::pow(2.0, deg_p + 1);
}

double empirical_max_deviation(const PlaneParametrization& p, const PlaneParametrization& q,
                               const RationalFunction& r, const IntervalSpec& interval, int n) {
  check_interval(interval);
  if (n < 2) throw Error(ErrorCode::invalid_argument, "empirical_max_deviation needs n >= 2");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = i == n - 1 ? interval.d2 : interval.d1 + i * (interval.d2 - interval.d1) / (n - 1);
    const Complex rt = r(t);
    for (int k = 0; k < 2; ++k)
      worst = std::max(worst, std::abs(p.component(k)(t) - q.component(k)(rt)));
  }
  return worst;
}

double parametrization_norm(const PlaneParametrization& p) {
  return std::max({p.x.num().norm_inf(), p.x.den().norm_inf(), p.y.num().norm_inf(), p.y.den().norm_inf()});
}

ErrorBoundReport error_bound(const PlaneParametrization& p, const PlaneParametrization& q,
                             const RationalFunction& r, const IntervalSpec& interval, double eps_used,
                             int n_empirical) {
  const BoundConstants bc = bound_constants(p, q, r, interval);
  ErrorBoundReport rep;
  rep.interval = interval;
  rep.d = bc.d;
  rep.M = bc.M;
  rep.C = bc.C;
  rep.norm_p = parametrization_norm(p);
  rep.norm_q = parametrization_norm(q);
  rep.eps_used = eps_used;
  const double base = eps_used * bc.C * rep.norm_p * rep.norm_q / (bc.M * bc.M);
  rep.point_bound = 2.0 * base;
  rep.offset_bound = 4.0 * std::numbers::sqrt2 * base;
  rep.empirical_max = empirical_max_deviation(p, q, r, interval, n_empirical);
  return rep;
}

std::vector<IntervalSpec> split_at_poles(const PlaneParametrization& p, const PlaneParametrization& q,
                                         const RationalFunction& r, const IntervalSpec& interval) {
  check_interval(interval);
  std::vector<double> cuts;
  std::vector<Poly> dens = {p.x.den(), p.y.den(), compose_numerator(q.x.den(), r), compose_numerator(q.y.den(), r)};
  for (const Poly& d : dens)
    for (const Complex z : roots(d))
      if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real())) && z.real() > interval.d1 && z.real() < interval.d2)
        cuts.push_back(z.real());
  std::sort(cuts.begin(), cuts.end());
  const double guard = 1e-3 * (interval.d2 - interval.d1);
  std::vector<IntervalSpec> out;
  double start = interval.d1;
  for (double c : cuts) {
    const double end = c - guard;
    if (end > start) out.push_back({start, end, interval.grid_n});
    start = std::max(start, c + guard);
  }
  if (interval.d2 > start) out.push_back({start, interval.d2, interval.grid_n});
  return out;
}

}  // namespace curverep
