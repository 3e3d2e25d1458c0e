#include "curverep/numpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curverep/error.hpp"

namespace curverep {

namespace {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();

double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

void trim_top(std::vector<Complex>& c, double tol) {
  while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
}

}  // namespace

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  trim_top(coeffs_, kTrimFactor * kMachEps * max_abs(coeffs_));
}

Poly::Poly(std::initializer_list<double> coeffs)
    : Poly(std::vector<Complex>(coeffs.begin(), coeffs.end())) {}

Poly Poly::constant(Complex c) { return Poly(std::vector<Complex>{c}); }

Poly Poly::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::raw(std::vector<Complex> coeffs) {
  Poly p;
  p.coeffs_ = std::move(coeffs);
  trim_top(p.coeffs_, 0.0);
  return p;
}

bool Poly::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c.imag() == 0.0; });
}

Complex Poly::operator()(Complex t) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Poly::norm_inf() const { return max_abs(coeffs_); }

double Poly::norm2() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

Poly Poly::trimmed(double tol) const {
  Poly p = *this;
  trim_top(p.coeffs_, tol);
  return p;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly{};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Poly::raw(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly p = *this;
  const Complex l = lc();
  for (auto& c : p.coeffs_) c /= l;
  p.coeffs_.back() = 1.0;
  return p;
}

std::vector<Complex> Poly::padded(std::size_t n) const {
  std::vector<Complex> v = coeffs_;
  if (v.size() < n) v.resize(n);
  return v;
}

Poly& Poly::operator+=(const Poly& o) {
  const double scale = std::max(norm_inf(), o.norm_inf());
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim_top(coeffs_, kTrimFactor * kMachEps * scale);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  const double scale = std::max(norm_inf(), o.norm_inf());
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim_top(coeffs_, kTrimFactor * kMachEps * scale);
  return *this;
}

Poly& Poly::operator*=(Complex c) {
  if (c == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  std::vector<Complex> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly::raw(std::move(r));
}

Poly Poly::pow(int e) const {
  Poly r = Poly::constant(1.0);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::invalid_argument, "polynomial division by zero");
  const int n = divisor.degree();
  if (degree() < n) return {Poly{}, *this};
  std::vector<Complex> rem = coeffs_;
  std::vector<Complex> quo(static_cast<std::size_t>(degree() - n + 1));
  const Complex l = divisor.lc();
  for (int k = degree() - n; k >= 0; --k) {
    const Complex q = rem[static_cast<std::size_t>(k + n)] / l;
    quo[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= n; ++j) rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k + n)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(n));
  return {Poly::raw(std::move(quo)), Poly(std::move(rem)).trimmed(kTrimFactor * kMachEps * norm_inf())};
}

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw Error(ErrorCode::invalid_argument, "BiPoly: data size does not match shape");
  trim(kTrimFactor * kMachEps * norm_inf());
}

BiPoly BiPoly::zeros(int deg_u, int deg_v) {
  BiPoly b;
  b.rows_ = static_cast<std::size_t>(deg_u + 1);
  b.cols_ = static_cast<std::size_t>(deg_v + 1);
  b.data_.assign(b.rows_ * b.cols_, Complex{});
  return b;
}

BiPoly BiPoly::from_u(const Poly& p) {
  if (p.is_zero()) return BiPoly{};
  BiPoly b = zeros(p.degree(), 0);
  for (int i = 0; i <= p.degree(); ++i) b.at(i, 0) = p[i];
  return b;
}

BiPoly BiPoly::from_v(const Poly& p) {
  if (p.is_zero()) return BiPoly{};
  BiPoly b = zeros(0, p.degree());
  for (int j = 0; j <= p.degree(); ++j) b.at(0, j) = p[j];
  return b;
}

Complex BiPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > deg_u() || j > deg_v()) return {};
  return data_[static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j)];
}

Poly BiPoly::coeff_v(int j) const {
  std::vector<Complex> c(rows_);
  for (int i = 0; i <= deg_u(); ++i) c[static_cast<std::size_t>(i)] = coeff(i, j);
  return Poly::raw(std::move(c));
}

Poly BiPoly::coeff_u(int i) const {
  std::vector<Complex> c(cols_);
  for (int j = 0; j <= deg_v(); ++j) c[static_cast<std::size_t>(j)] = coeff(i, j);
  return Poly::raw(std::move(c));
}

Complex BiPoly::operator()(Complex u, Complex v) const { return eval_v(v)(u); }

Poly BiPoly::eval_v(Complex v) const {
  std::vector<Complex> c(rows_);
  for (int i = 0; i <= deg_u(); ++i) c[static_cast<std::size_t>(i)] = coeff_u(i)(v);
  return Poly::raw(std::move(c));
}

Poly BiPoly::eval_u(Complex u) const {
  std::vector<Complex> c(cols_);
  for (int j = 0; j <= deg_v(); ++j) c[static_cast<std::size_t>(j)] = coeff_v(j)(u);
  return Poly::raw(std::move(c));
}

double BiPoly::norm_inf() const { return max_abs(data_); }

double BiPoly::norm2() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

BiPoly BiPoly::swapped() const {
  BiPoly b = zeros(deg_v(), deg_u());
  if (is_zero()) return BiPoly{};
  for (int i = 0; i <= deg_u(); ++i)
    for (int j = 0; j <= deg_v(); ++j) b.at(j, i) = coeff(i, j);
  return b;
}

BiPoly BiPoly::derivative_v() const {
  if (deg_v() < 1) return BiPoly{};
  BiPoly b = zeros(deg_u(), deg_v() - 1);
  for (int i = 0; i <= deg_u(); ++i)
    for (int j = 1; j <= deg_v(); ++j) b.at(i, j - 1) = coeff(i, j) * static_cast<double>(j);
  b.trim(0.0);
  return b;
}

BiPoly BiPoly::trimmed(double tol) const {
  BiPoly b = *this;
  b.trim(tol);
  return b;
}

int BiPoly::total_degree() const {
  int best = -1;
  for (int i = 0; i <= deg_u(); ++i)
    for (int j = 0; j <= deg_v(); ++j)
      if (coeff(i, j) != Complex{}) best = std::max(best, i + j);
  return best;
}

BiPoly BiPoly::homogeneous_part(int total) const {
  BiPoly b = *this;
  for (int i = 0; i <= deg_u(); ++i)
    for (int j = 0; j <= deg_v(); ++j)
      if (i + j != total) b.at(i, j) = 0.0;
  b.trim(0.0);
  return b;
}

void BiPoly::trim(double tol) {
  auto row_small = [&](std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (std::abs(data_[r * cols_ + j]) > tol) return false;
    return true;
  };
  auto col_small = [&](std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (std::abs(data_[i * cols_ + c]) > tol) return false;
    return true;
  };
  std::size_t r = rows_, c = cols_;
  while (r > 0 && row_small(r - 1)) --r;
  while (c > 0 && col_small(c - 1)) --c;
  if (r == 0 || c == 0) {
    rows_ = cols_ = 0;
    data_.clear();
    return;
  }
  if (r == rows_ && c == cols_) return;
  std::vector<Complex> d(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) d[i * c + j] = data_[i * cols_ + j];
  rows_ = r;
  cols_ = c;
  data_ = std::move(d);
}

namespace {

BiPoly combine(const BiPoly& a, const BiPoly& b, double sign) {
  const int du = std::max(a.deg_u(), b.deg_u());
  const int dv = std::max(a.deg_v(), b.deg_v());
  if (du < 0 || dv < 0) return BiPoly{};
  std::vector<Complex> d(static_cast<std::size_t>((du + 1) * (dv + 1)));
  for (int i = 0; i <= du; ++i)
    for (int j = 0; j <= dv; ++j)
      d[static_cast<std::size_t>(i * (dv + 1) + j)] = a.coeff(i, j) + sign * b.coeff(i, j);
  const double scale = std::max(a.norm_inf(), b.norm_inf());
  return BiPoly(static_cast<std::size_t>(du + 1), static_cast<std::size_t>(dv + 1), std::move(d))
      .trimmed(kTrimFactor * kMachEps * scale);
}

}  // namespace

BiPoly& BiPoly::operator+=(const BiPoly& o) { return *this = combine(*this, o, 1.0); }
BiPoly& BiPoly::operator-=(const BiPoly& o) { return *this = combine(*this, o, -1.0); }

BiPoly& BiPoly::operator*=(Complex c) {
  if (c == Complex{}) return *this = BiPoly{};
  for (auto& x : data_) x *= c;
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return BiPoly{};
  BiPoly r = BiPoly::zeros(a.deg_u() + b.deg_u(), a.deg_v() + b.deg_v());
  for (int i = 0; i <= a.deg_u(); ++i)
    for (int j = 0; j <= a.deg_v(); ++j) {
      const Complex c = a.coeff(i, j);
      if (c == Complex{}) continue;
      for (int k = 0; k <= b.deg_u(); ++k)
        for (int l = 0; l <= b.deg_v(); ++l) r.at(i + k, j + l) += c * b.coeff(k, l);
    }
  r.trim(0.0);
  return r;
}

BiPoly BiPoly::pow(int e) const {
  BiPoly r = BiPoly::from_u(Poly::constant(1.0));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::invalid_argument, "zero denominator");
}

RationalFunction RationalFunction::identity() {
  return RationalFunction(Poly{0.0, 1.0}, Poly::constant(1.0));
}

int RationalFunction::degree() const { return std::max({num_.degree(), den_.degree(), 0}); }

RationalFunction RationalFunction::monic_den() const {
  const Complex l = den_.lc();
  return RationalFunction(num_ * (1.0 / l), den_.monic());
}

int PlaneParametrization::degree() const { return std::max(x.degree(), y.degree()); }

bool PlaneParametrization::is_real() const {
  return x.num().is_real() && x.den().is_real() && y.num().is_real() && y.den().is_real();
}

// ---------------------------------------------------------------- free functions

double norm_inf(const Poly& p) { return p.norm_inf(); }
double norm_inf(const BiPoly& p) { return p.norm_inf(); }

BiPoly normalized(const BiPoly& a) {
  const double n = a.norm_inf();
  if (n == 0.0) throw Error(ErrorCode::invalid_argument, "cannot normalize the zero polynomial");
  return a * Complex(1.0 / n);
}

double normalized_distance(const BiPoly& a, const BiPoly& b) {
  const BiPoly an = normalized(a);
  const BiPoly bn = normalized(b);
  const int du = std::max(an.deg_u(), bn.deg_u());
  const int dv = std::max(an.deg_v(), bn.deg_v());
  Complex inner{};
  for (int i = 0; i <= du; ++i)
    for (int j = 0; j <= dv; ++j) inner += std::conj(bn.coeff(i, j)) * an.coeff(i, j);
  const Complex phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : Complex(1.0);
  double dist = 0.0;
  for (int i = 0; i <= du; ++i)
    for (int j = 0; j <= dv; ++j) dist = std::max(dist, std::abs(an.coeff(i, j) - phase * bn.coeff(i, j)));
  return dist;
}

bool approx_eq(const BiPoly& a, const BiPoly& b, double eps) {
  if (a.is_zero() || b.is_zero())
    throw Error(ErrorCode::invalid_argument, "approx_eq: zero polynomial cannot be normalized");
  if (a.deg_u() != b.deg_u() || a.deg_v() != b.deg_v()) return false;
  return normalized_distance(a, b) <= eps;
}

Poly numerator_along(const BiPoly& a, const RationalFunction& first, const RationalFunction& second) {
  if (a.is_zero()) return Poly{};
  const int du = a.deg_u(), dv = a.deg_v();
  std::vector<Poly> fn(du + 1), fd(du + 1), sn(dv + 1), sd(dv + 1);
  fn[0] = fd[0] = sn[0] = sd[0] = Poly::constant(1.0);
  for (int i = 1; i <= du; ++i) {
    fn[i] = fn[i - 1] * first.num();
    fd[i] = fd[i - 1] * first.den();
  }
  for (int j = 1; j <= dv; ++j) {
    sn[j] = sn[j - 1] * second.num();
    sd[j] = sd[j - 1] * second.den();
  }
  std::vector<Complex> acc;
  for (int i = 0; i <= du; ++i) {
    const Poly fi = fn[i] * fd[du - i];
    for (int j = 0; j <= dv; ++j) {
      const Complex c = a.coeff(i, j);
      if (c == Complex{}) continue;
      const Poly term = fi * (sn[j] * sd[dv - j]);
      if (acc.size() < term.coeffs().size()) acc.resize(term.coeffs().size());
      for (std::size_t k = 0; k < term.coeffs().size(); ++k) acc[k] += c * term.coeffs()[k];
    }
  }
  return Poly(std::move(acc));
}

bool approx_zero_along(const BiPoly& a, const RationalFunction& r, double eps) {
  if (a.is_zero()) throw Error(ErrorCode::invalid_argument, "approx_zero_along: zero polynomial");
  const Poly n = numerator_along(a, RationalFunction::identity(), r);
  return n.norm_inf() <= eps * a.norm_inf();
}

BiPoly cross_difference(const RationalFunction& p, const RationalFunction& q) {
  return BiPoly::from_u(p.num()) * BiPoly::from_v(q.den()) - BiPoly::from_v(q.num()) * BiPoly::from_u(p.den());
}

BiPoly num_cross_difference_R(const RationalFunction& r) {
  if (r.is_constant()) throw Error(ErrorCode::invalid_argument, "num_cross_difference_R: constant rational function");
  return cross_difference(r, r);
}

double cosine_similarity(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = std::max(a.size(), b.size());
  Complex inner{};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex x = i < a.size() ? a[i] : Complex{};
    const Complex y = i < b.size() ? b[i] : Complex{};
    inner += std::conj(x) * y;
    na += std::norm(x);
    nb += std::norm(y);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(inner) / std::sqrt(na * nb);
}

std::vector<Complex> roots(const Poly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  const Poly m = p.monic();
  const Poly dm = m.derivative();
  // Initial guesses on a circle of the Cauchy radius, offset to break symmetry.
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(m[i]));
  radius = 1.0 + radius;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(0.5 * radius, angle);
  }
  for (int iter = 0; iter < 800; ++iter) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      const Complex pv = m(zk);
      if (pv == Complex{}) continue;
      const Complex ratio = pv / dm(zk);
      Complex sum{};
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
      const Complex step = ratio / (1.0 - ratio * sum);
      zk -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(zk)));
    }
    if (max_step < 1e-15) break;
  }
  return z;
}

}  // namespace curverep
