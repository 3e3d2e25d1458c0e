#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace curverep {

using Complex = std::complex<double>;

// Relative factor used for default trimming: coefficients below
// kTrimFactor * machine-epsilon * ||p||_inf at the top are dropped.
inline constexpr double kTrimFactor = 10.0;

/// Dense univariate polynomial with complex coefficients, ascending degree.
///
/// The zero polynomial has an empty coefficient list and degree -1.
/// Construction trims trailing coefficients whose magnitude is below the
/// default relative tolerance; use `trimmed()` for an explicit tolerance.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs);
  Poly(std::initializer_list<double> coeffs);

  static Poly constant(Complex c);
  static Poly monomial(int degree, Complex c = 1.0);
  /// Coefficient vector taken as-is (only exact zeros removed at the top).
  static Poly raw(std::vector<Complex> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_real() const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](int i) const {
    return i >= 0 && i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : Complex{};
  }
  Complex lc() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

  Complex operator()(Complex t) const;
  double norm_inf() const;
  double norm2() const;

  Poly trimmed(double tol) const;
  Poly derivative() const;
  Poly monic() const;
  /// Coefficients padded with zeros to length n (n >= degree()+1).
  std::vector<Complex> padded(std::size_t n) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(Complex c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return a * Complex(-1.0); }
  friend Poly operator*(Poly a, Complex c) { return a *= c; }
  friend Poly operator*(Complex c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly pow(int e) const;
  /// Euclidean division; throws on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Dense bivariate polynomial. coeff(i, j) multiplies u^i v^j where u is the
/// first (row) variable and v the second (column) variable. Which symbols
/// these are (t/s, s/x, x1/x2) is fixed by the producing operation.
class BiPoly {
 public:
  BiPoly() = default;
  /// rows x cols coefficient matrix, row-major, trimmed by default tolerance.
  BiPoly(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  static BiPoly zeros(int deg_u, int deg_v);
  static BiPoly from_u(const Poly& p);  // p(u)
  static BiPoly from_v(const Poly& p);  // p(v)

  int deg_u() const { return static_cast<int>(rows_) - 1; }
  int deg_v() const { return static_cast<int>(cols_) - 1; }
  bool is_zero() const { return data_.empty(); }

  Complex coeff(int i, int j) const;
  Complex& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j)]; }
  const std::vector<Complex>& data() const { return data_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Coefficient of v^j as a polynomial in u.
  Poly coeff_v(int j) const;
  /// Coefficient of u^i as a polynomial in v.
  Poly coeff_u(int i) const;

  Complex operator()(Complex u, Complex v) const;
  Poly eval_v(Complex v) const;  // polynomial in u
  Poly eval_u(Complex u) const;  // polynomial in v

  double norm_inf() const;
  double norm2() const;

  BiPoly swapped() const;
  BiPoly derivative_v() const;
  BiPoly trimmed(double tol) const;
  /// Zero out everything except terms of total degree `total`.
  BiPoly homogeneous_part(int total) const;
  int total_degree() const;

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(Complex c);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, Complex c) { return a *= c; }
  friend BiPoly operator*(Complex c, BiPoly a) { return a *= c; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly pow(int e) const;

 private:
  void trim(double tol);
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// num/den with a nonzero denominator. Reduction lives in approxgcd
/// (`reduce`) since it needs an approximate gcd.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Poly::constant(1.0)) {}
  RationalFunction(Poly num, Poly den);
  static RationalFunction identity();

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  /// max(deg num, deg den); 0 for constants.
  int degree() const;
  bool is_constant() const { return degree() <= 0; }
  Complex operator()(Complex t) const { return num_(t) / den_(t); }
  /// Denominator scaled to leading coefficient 1 (numerator follows).
  RationalFunction monic_den() const;

 private:
  Poly num_;
  Poly den_;
};

struct PlaneParametrization {
  RationalFunction x;
  RationalFunction y;

  const RationalFunction& component(int k) const { return k == 0 ? x : y; }
  /// deg(P): the larger of the component degrees.
  int degree() const;
  bool is_real() const;
  std::pair<Complex, Complex> operator()(Complex t) const { return {x(t), y(t)}; }
};

double norm_inf(const Poly& p);
double norm_inf(const BiPoly& p);

/// Rescale to unit infinity norm (no phase change). Throws on zero input.
BiPoly normalized(const BiPoly& a);

/// Distance between a/||a|| and c * b/||b|| where c is the unimodular
/// constant aligning the two (least-squares phase).
double normalized_distance(const BiPoly& a, const BiPoly& b);

/// a ~=_eps b: after unit-norm normalization (up to a unimodular constant),
/// ||a - b||_inf <= eps and the trimmed bidegrees agree.
bool approx_eq(const BiPoly& a, const BiPoly& b, double eps);

/// num(A(u, v)) after substituting u = first, v = second and clearing the
/// denominators first.den^{deg_u A} * second.den^{deg_v A}.
Poly numerator_along(const BiPoly& a, const RationalFunction& first,
                     const RationalFunction& second);

/// A(t, r(t)) ~=_eps 0, i.e. ||num(A(t, r(t)))|| <= eps ||A||.
bool approx_zero_along(const BiPoly& a, const RationalFunction& r, double eps);

/// p_num(t) q_den(s) - q_num(s) p_den(t), indexed (t, s).
BiPoly cross_difference(const RationalFunction& p, const RationalFunction& q);

/// M(t)N(s) - M(s)N(t) for r = M/N; throws for constant r.
BiPoly num_cross_difference_R(const RationalFunction& r);

/// Cosine similarity |<a,b>| / (||a|| ||b||) of coefficient vectors.
double cosine_similarity(std::span<const Complex> a, std::span<const Complex> b);

/// All complex roots (Aberth iteration). Empty for constants.
std::vector<Complex> roots(const Poly& p);

}  // namespace curverep
