#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "curverep/numpoly.hpp"

namespace curverep::exact {

using Rational = mpq_class;

// Exact univariate polynomial over Q, ascending degree, no trailing zeros.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  RatPoly(std::initializer_list<long> coeffs);
  static RatPoly constant(const Rational& c);
  static RatPoly monomial(int degree, const Rational& c = 1);
  // Exact binary value of each (real) double coefficient.
  static RatPoly from_poly(const Poly& p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : Rational(0); }
  Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const;
  RatPoly derivative() const;
  RatPoly monic() const;
  // Integer coefficients with content 1 and positive leading coefficient.
  RatPoly primitive() const;
  Poly to_poly() const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const Rational& c);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
  RatPoly pow(int e) const;
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Exact gcd over Q, normalized by RatPoly::primitive. gcd(0, 0) = 0.
RatPoly exact_gcd(const RatPoly& f, const RatPoly& g);

// Exact quotient; throws if d does not divide f.
RatPoly exact_quotient(const RatPoly& f, const RatPoly& d);

struct RatFunc {
  RatPoly num;
  RatPoly den = RatPoly::constant(1);

  // Cancels the gcd and makes the denominator monic.
  RatFunc reduced() const;
  int degree() const { return std::max({num.degree(), den.degree(), 0}); }
  RationalFunction to_numeric() const { return RationalFunction(num.to_poly(), den.to_poly()); }
  static RatFunc from_numeric(const RationalFunction& r);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }
};

// q(r(t)), reduced.
RatFunc compose(const RatFunc& q, const RatFunc& r);

struct ExactParametrization {
  RatFunc x, y;
  const RatFunc& component(int k) const { return k == 0 ? x : y; }
  PlaneParametrization to_numeric() const { return {x.to_numeric(), y.to_numeric()}; }
  static ExactParametrization from_numeric(const PlaneParametrization& p);
};

// Dense bivariate polynomial over Q; coeff(i, j) multiplies u^i v^j.
class ExactBiPoly {
 public:
  ExactBiPoly() = default;
  static ExactBiPoly zeros(int deg_u, int deg_v);
  static ExactBiPoly from_u(const RatPoly& p);
  static ExactBiPoly from_v(const RatPoly& p);
  static ExactBiPoly from_bipoly(const BiPoly& p);

  int deg_u() const { return static_cast<int>(rows_) - 1; }
  int deg_v() const { return static_cast<int>(cols_) - 1; }
  bool is_zero() const { return data_.empty(); }
  Rational coeff(int i, int j) const;
  Rational& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j)]; }

  RatPoly coeff_v(int j) const;  // polynomial in u
  RatPoly coeff_u(int i) const;  // polynomial in v
  RatPoly eval_v(const Rational& v) const;
  Rational operator()(const Rational& u, const Rational& v) const;
  ExactBiPoly swapped() const;
  BiPoly to_bipoly() const;

  friend ExactBiPoly operator+(const ExactBiPoly& a, const ExactBiPoly& b);
  friend ExactBiPoly operator-(const ExactBiPoly& a, const ExactBiPoly& b);
  friend ExactBiPoly operator*(const ExactBiPoly& a, const ExactBiPoly& b);
  friend ExactBiPoly operator*(const ExactBiPoly& a, const Rational& c);
  friend bool operator==(const ExactBiPoly& a, const ExactBiPoly& b);
  ExactBiPoly pow(int e) const;

  void trim();

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Exact quotient a / b; throws if the division leaves a remainder.
ExactBiPoly exact_div(const ExactBiPoly& a, const ExactBiPoly& b);

// gcd in Q[u, v], scaled to integer coefficients with content 1 and a
// positive coefficient on the term of highest v-degree (then u-degree).
ExactBiPoly bivariate_gcd(const ExactBiPoly& a, const ExactBiPoly& b);

// p_num(t) q_den(s) - q_num(s) p_den(t), indexed (t, s).
ExactBiPoly cross_difference(const RatFunc& p, const RatFunc& q);

// Sylvester resultant with respect to an outer variable t. a[i] and b[i]
// are the coefficients of t^i, themselves polynomials in (u, v); the formal
// degrees are a.size() - 1 and b.size() - 1. Fraction-free (Bareiss).
ExactBiPoly sylvester_resultant(const std::vector<ExactBiPoly>& a, const std::vector<ExactBiPoly>& b);

// deg_t of gcd(H_1, H_2).
int tracing_index(const ExactParametrization& p);

struct ExactReparam {
  ExactBiPoly S;  // (t, s)
  int ell = 1;
  std::pair<int, int> pair{-1, -1};
  RatFunc R;
  ExactBiPoly L1, L2;  // (s, x_k)
  ExactParametrization Q;
};

ExactReparam exact_reparametrize(const ExactParametrization& p);

// res_t(x1 p12 - p11, x2 p22 - p21) indexed (x1, x2).
ExactBiPoly exact_implicitize(const ExactParametrization& p);

// Exact value of a decimal literal such as "-1.25e-3".
Rational parse_decimal(std::string_view text);

}  // namespace curverep::exact
