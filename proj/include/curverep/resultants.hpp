#pragma once

#include <vector>

#include "curverep/linalg.hpp"
#include "curverep/numpoly.hpp"

namespace curverep {

// Sylvester matrix of a and b taken with their formal degrees
// (a.size() - 1, b.size() - 1); rows hold descending coefficients, so that
// det(sylvester(t - a, t - b)) = a - b.
Matrix sylvester_matrix(std::span<const Complex> a, std::span<const Complex> b);

// res_t(f, g). A constant argument c gives c^(deg of the other).
Complex resultant_uni(const Poly& f, const Poly& g);

struct ResultantPlan {
  int deg_first = 0;   // degree bound in the first surviving variable
  int deg_second = 0;  // degree bound in the second surviving variable
  std::vector<double> first_nodes, second_nodes;
  double fit_residual = 0.0;  // relative least-squares residual
  double max_abs_value = 0.0;
  double min_abs_value = 0.0;
};

// Relative residual above which the recovered coefficients are rejected.
inline constexpr double kInterpolationTol = 1e-8;

// res_t(G, B) for G indexed (t, x) and B indexed (t, s), returned indexed
// (s, x). deg_x and deg_s bound the degrees of the result.
BiPoly parametric_resultant_t(const BiPoly& g, const BiPoly& b, int deg_x, int deg_s,
                              ResultantPlan* plan = nullptr);

// Implicit polynomial res_t(x1 p12 - p11, x2 p22 - p21), indexed (x1, x2),
// scaled to unit infinity norm.
BiPoly implicitize(const PlaneParametrization& p, ResultantPlan* plan = nullptr);

// Homogeneous part of top total degree; coefficients below
// kInterpolationTol ||f|| do not count towards the degree.
BiPoly leading_form(const BiPoly& f);

// The same form read off the points at infinity: the product over the roots
// s_i of the common denominator of x2 p11(s_i) - p21(s_i) x1, indexed
// (x1, x2). Unlike implicitize it stays well defined when numerators and
// denominator share approximate factors. Needs a shared denominator of
// degree at least the numerator degrees.
BiPoly leading_form_at_infinity(const PlaneParametrization& p);

}  // namespace curverep
