#pragma once

#include <vector>

#include "curverep/numpoly.hpp"

namespace curverep {

struct IntervalSpec {
  double d1 = -1.0;
  double d2 = 1.0;
  int grid_n = 4096;
};

struct BoundConstants {
  double d = 0.0;
  double M = 0.0;
  double C = 0.0;
  int ell = 1;
  int deg_p = 0;
};

// Three-case constant: (ell deg_p)^(1/ell) for d = 1,
// d^(deg_p+1) / (d-1)^(1/ell) for d > 1, 1 / (1-d)^(1/ell) for d < 1.
double c_constant(double d, int ell, int deg_p);

// M is the minimum over I of |p_i2(t)| and |q_i2(R(t))| (grid search, then
// local golden-section refinement around the best node). Throws
// pole_in_interval if it falls below 1e-9.
BoundConstants bound_constants(const PlaneParametrization& p, const PlaneParametrization& q,
                               const RationalFunction& r, const IntervalSpec& interval);

// Simplified upper bound on C: d^(deg_p+1) for d >= 2, 2^(deg_p+1) for
// 1 < d < 2. Throws not_applicable for d <= 1.
double corollary_bounds(double d, int deg_p);

// max over n evenly spaced t in I and both components of |p_i(t) - q_i(R(t))|.
double empirical_max_deviation(const PlaneParametrization& p, const PlaneParametrization& q,
                               const RationalFunction& r, const IntervalSpec& interval, int n);

// Largest infinity norm among the four numerator/denominator polynomials.
double parametrization_norm(const PlaneParametrization& p);

struct ErrorBoundReport {
  IntervalSpec interval;
  double d = 0.0, M = 0.0, C = 0.0;
  double norm_p = 0.0, norm_q = 0.0;
  double point_bound = 0.0;   // 2 / M^2 * eps * C * ||p|| ||q||
  double offset_bound = 0.0;  // 4 sqrt(2) / M^2 * eps * C * ||p|| ||q||
  double empirical_max = 0.0;
  double eps_used = 0.0;
};

ErrorBoundReport error_bound(const PlaneParametrization& p, const PlaneParametrization& q,
                             const RationalFunction& r, const IntervalSpec& interval, double eps_used,
                             int n_empirical = 1000);

// Splits I at the real roots of the denominators of P and of Q(R), leaving a
// guard band of 1e-3 * |I| around each root.
std::vector<IntervalSpec> split_at_poles(const PlaneParametrization& p, const PlaneParametrization& q,
                                         const RationalFunction& r, const IntervalSpec& interval);

}  // namespace curverep
