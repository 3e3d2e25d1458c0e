#include "curverep/exact.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "curverep/error.hpp"

namespace curverep::exact {

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) c_.emplace_back(c);
  trim();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::from_poly(const Poly& p) {
  std::vector<Rational> v;
  for (const auto& c : p.coeffs()) {
    if (c.imag() != 0.0) throw Error(ErrorCode::invalid_argument, "exact mode needs real coefficients");
    v.emplace_back(c.real());
  }
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / lc());
}

RatPoly RatPoly::primitive() const {
  if (is_zero()) return *this;
  mpz_class den = 1, num = 0;
  for (const auto& c : c_) den = lcm(den, mpz_class(c.get_den()));
  std::vector<Rational> v;
  for (const auto& c : c_) {
    mpz_class z = c.get_num() * (den / c.get_den());
    num = gcd(num, z);
    v.emplace_back(z);
  }
  if (v.back() < 0) num = -num;
  for (auto& c : v) c /= num;
  return RatPoly(std::move(v));
}

Poly RatPoly::to_poly() const {
  std::vector<Complex> v;
  for (const auto& c : c_) v.emplace_back(c.get_d());
  return Poly::raw(std::move(v));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return RatPoly(std::move(r));
}

RatPoly operator-(const RatPoly& a) {
  RatPoly r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(r));
}

RatPoly operator*(const RatPoly& a, const Rational& c) {
  if (c == 0) return {};
  RatPoly r = a;
  for (auto& x : r.c_) x *= c;
  return r;
}

RatPoly RatPoly::pow(int e) const {
  RatPoly r = constant(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::invalid_argument, "exact division by zero polynomial");
  if (degree() < d.degree()) return {RatPoly{}, *this};
  std::vector<Rational> rem = c_;
  const int n = d.degree();
  std::vector<Rational> quo(static_cast<std::size_t>(degree() - n + 1), Rational(0));
  const Rational inv = 1 / d.lc();
  for (int k = degree() - n; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + n)] * inv;
    quo[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= n; ++j) rem[static_cast<std::size_t>(k + j)] -= q * d.c_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(n));
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly exact_gcd(const RatPoly& f, const RatPoly& g) {
  RatPoly a = f, b = g;
  while (!b.is_zero()) {
    RatPoly r = a.divmod(b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.primitive();
}

RatPoly exact_quotient(const RatPoly& f, const RatPoly& d) {
  auto [q, r] = f.divmod(d);
  if (!r.is_zero()) throw Error(ErrorCode::invalid_argument, "exact_quotient: nonzero remainder");
  return q;
}

// ---------------------------------------------------------------- RatFunc

RatFunc RatFunc::reduced() const {
  if (den.is_zero()) throw Error(ErrorCode::invalid_argument, "zero denominator");
  if (num.is_zero()) return RatFunc{RatPoly{}, RatPoly::constant(1)};
  const RatPoly g = exact_gcd(num, den);
  RatPoly n = exact_quotient(num, g), d = exact_quotient(den, g);
  const Rational l = d.lc();
  return RatFunc{n * Rational(1 / l), d * Rational(1 / l)};
}

RatFunc RatFunc::from_numeric(const RationalFunction& r) {
  return RatFunc{RatPoly::from_poly(r.num()), RatPoly::from_poly(r.den())};
}

ExactParametrization ExactParametrization::from_numeric(const PlaneParametrization& p) {
  return {RatFunc::from_numeric(p.x), RatFunc::from_numeric(p.y)};
}

RatFunc compose(const RatFunc& q, const RatFunc& r) {
  const int n = q.degree();
  std::vector<RatPoly> mp(n + 1), np(n + 1);
  mp[0] = np[0] = RatPoly::constant(1);
  for (int i = 1; i <= n; ++i) {
    mp[i] = mp[i - 1] * r.num;
    np[i] = np[i - 1] * r.den;
  }
  RatPoly num, den;
  for (int i = 0; i <= n; ++i) {
    const RatPoly term = mp[i] * np[n - i];
    num = num + term * q.num[i];
    den = den + term * q.den[i];
  }
  return RatFunc{num, den}.reduced();
}

// ---------------------------------------------------------------- ExactBiPoly

ExactBiPoly ExactBiPoly::zeros(int deg_u, int deg_v) {
  ExactBiPoly b;
  b.rows_ = static_cast<std::size_t>(deg_u + 1);
  b.cols_ = static_cast<std::size_t>(deg_v + 1);
  b.data_.assign(b.rows_ * b.cols_, Rational(0));
  return b;
}

ExactBiPoly ExactBiPoly::from_u(const RatPoly& p) {
  if (p.is_zero()) return {};
  ExactBiPoly b = zeros(p.degree(), 0);
  for (int i = 0; i <= p.degree(); ++i) b.at(i, 0) = p[i];
  return b;
}

ExactBiPoly ExactBiPoly::from_v(const RatPoly& p) {
  if (p.is_zero()) return {};
  ExactBiPoly b = zeros(0, p.degree());
  for (int j = 0; j <= p.degree(); ++j) b.at(0, j) = p[j];
  return b;
}

ExactBiPoly ExactBiPoly::from_bipoly(const BiPoly& p) {
  if (p.is_zero()) return {};
  ExactBiPoly b = zeros(p.deg_u(), p.deg_v());
  for (int i = 0; i <= p.deg_u(); ++i)
    for (int j = 0; j <= p.deg_v(); ++j) {
      const Complex c = p.coeff(i, j);
      if (c.imag() != 0.0) throw Error(ErrorCode::invalid_argument, "exact mode needs real coefficients");
      b.at(i, j) = Rational(c.real());
    }
  b.trim();
  return b;
}

Rational ExactBiPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > deg_u() || j > deg_v()) return 0;
  return data_[static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j)];
}

RatPoly ExactBiPoly::coeff_v(int j) const {
  std::vector<Rational> c;
  for (int i = 0; i <= deg_u(); ++i) c.push_back(coeff(i, j));
  return RatPoly(std::move(c));
}

RatPoly ExactBiPoly::coeff_u(int i) const {
  std::vector<Rational> c;
  for (int j = 0; j <= deg_v(); ++j) c.push_back(coeff(i, j));
  return RatPoly(std::move(c));
}

RatPoly ExactBiPoly::eval_v(const Rational& v) const {
  std::vector<Rational> c;
  for (int i = 0; i <= deg_u(); ++i) c.push_back(coeff_u(i)(v));
  return RatPoly(std::move(c));
}

Rational ExactBiPoly::operator()(const Rational& u, const Rational& v) const { return eval_v(v)(u); }

ExactBiPoly ExactBiPoly::swapped() const {
  if (is_zero()) return {};
  ExactBiPoly b = zeros(deg_v(), deg_u());
  for (int i = 0; i <= deg_u(); ++i)
    for (int j = 0; j <= deg_v(); ++j) b.at(j, i) = coeff(i, j);
  return b;
}

BiPoly ExactBiPoly::to_bipoly() const {
  std::vector<Complex> d;
  for (const auto& c : data_) d.emplace_back(c.get_d());
  return BiPoly(rows_, cols_, std::move(d));
}

void ExactBiPoly::trim() {
  for (auto& c : data_) c.canonicalize();
  std::size_t r = rows_, c = cols_;
  auto row_zero = [&](std::size_t i) {
    for (std::size_t j = 0; j < c; ++j)
      if (data_[i * cols_ + j] != 0) return false;
    return true;
  };
  auto col_zero = [&](std::size_t j) {
    for (std::size_t i = 0; i < r; ++i)
      if (data_[i * cols_ + j] != 0) return false;
    return true;
  };
  while (r > 0 && row_zero(r - 1)) --r;
  while (c > 0 && col_zero(c - 1)) --c;
  if (r == 0 || c == 0) {
    *this = ExactBiPoly{};
    return;
  }
  if (r == rows_ && c == cols_) return;
  std::vector<Rational> d(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) d[i * c + j] = data_[i * cols_ + j];
  rows_ = r;
  cols_ = c;
  data_ = std::move(d);
}

namespace {

ExactBiPoly combine(const ExactBiPoly& a, const ExactBiPoly& b, int sign) {
  const int du = std::max(a.deg_u(), b.deg_u()), dv = std::max(a.deg_v(), b.deg_v());
  if (du < 0) return {};
  ExactBiPoly r = ExactBiPoly::zeros(du, dv);
  for (int i = 0; i <= du; ++i)
    for (int j = 0; j <= dv; ++j) r.at(i, j) = sign > 0 ? Rational(a.coeff(i, j) + b.coeff(i, j)) : Rational(a.coeff(i, j) - b.coeff(i, j));
  r.trim();
  return r;
}

}  // namespace

ExactBiPoly operator+(const ExactBiPoly& a, const ExactBiPoly& b) { return combine(a, b, 1); }
ExactBiPoly operator-(const ExactBiPoly& a, const ExactBiPoly& b) { return combine(a, b, -1); }

ExactBiPoly operator*(const ExactBiPoly& a, const ExactBiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  ExactBiPoly r = ExactBiPoly::zeros(a.deg_u() + b.deg_u(), a.deg_v() + b.deg_v());
  for (int i = 0; i <= a.deg_u(); ++i)
    for (int j = 0; j <= a.deg_v(); ++j) {
      const Rational c = a.coeff(i, j);
      if (c == 0) continue;
      for (int k = 0; k <= b.deg_u(); ++k)
        for (int l = 0; l <= b.deg_v(); ++l) {
          const Rational& d = b.data_[static_cast<std::size_t>(k) * b.cols_ + static_cast<std::size_t>(l)];
          if (d != 0) r.at(i + k, j + l) += c * d;
        }
    }
  r.trim();
  return r;
}

ExactBiPoly operator*(const ExactBiPoly& a, const Rational& c) {
  if (c == 0) return {};
  ExactBiPoly r = a;
  for (auto& x : r.data_) x *= c;
  return r;
}

bool operator==(const ExactBiPoly& a, const ExactBiPoly& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

ExactBiPoly ExactBiPoly::pow(int e) const {
  ExactBiPoly r = from_u(RatPoly::constant(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

ExactBiPoly exact_div(const ExactBiPoly& a, const ExactBiPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::invalid_argument, "exact_div by zero");
  if (a.is_zero()) return {};
  // Long division in u with coefficients in Q[v].
  ExactBiPoly rem = a, quo;
  const RatPoly blead = b.coeff_u(b.deg_u());
  while (!rem.is_zero()) {
    const int shift = rem.deg_u() - b.deg_u();
    if (shift < 0) throw Error(ErrorCode::invalid_argument, "exact_div: nonzero remainder");
    const RatPoly q = exact_quotient(rem.coeff_u(rem.deg_u()), blead);
    const ExactBiPoly term = ExactBiPoly::from_u(RatPoly::monomial(shift)) * ExactBiPoly::from_v(q);
    quo = quo + term;
    rem = rem - term * b;
  }
  return quo;
}

namespace {

// Polynomial in v with coefficients in Q[u], index = v-degree.
using UPoly = std::vector<RatPoly>;

UPoly to_upoly(const ExactBiPoly& a) {
  UPoly r;
  for (int j = 0; j <= a.deg_v(); ++j) r.push_back(a.coeff_v(j));
  return r;
}

ExactBiPoly from_upoly(const UPoly& p) {
  ExactBiPoly r;
  for (std::size_t j = 0; j < p.size(); ++j)
    r = r + ExactBiPoly::from_u(p[j]) * ExactBiPoly::from_v(RatPoly::monomial(static_cast<int>(j)));
  return r;
}

void trim_upoly(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

RatPoly content(const UPoly& p) {
  RatPoly g;
  for (const auto& c : p) g = exact_gcd(g, c);
  return g;
}

UPoly primitive_part(const UPoly& p) {
  const RatPoly c = content(p);
  UPoly r;
  for (const auto& x : p) r.push_back(exact_quotient(x, c));
  return r;
}

// Pseudo-remainder of a by b in v, without the final lc power correction.
UPoly prem(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const RatPoly lb = b.back();
  trim_upoly(a);
  while (!a.empty() && a.size() - 1 >= db) {
    const RatPoly la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t j = 0; j <= db; ++j) a[j + shift] = a[j + shift] - la * b[j];
    trim_upoly(a);
  }
  return a;
}

ExactBiPoly normalize_integer(const ExactBiPoly& g) {
  if (g.is_zero()) return g;
  mpz_class den = 1, num = 0;
  for (int i = 0; i <= g.deg_u(); ++i)
    for (int j = 0; j <= g.deg_v(); ++j) den = lcm(den, mpz_class(g.coeff(i, j).get_den()));
  for (int i = 0; i <= g.deg_u(); ++i)
    for (int j = 0; j <= g.deg_v(); ++j) num = gcd(num, mpz_class(g.coeff(i, j).get_num() * (den / g.coeff(i, j).get_den())));
  const RatPoly top = g.coeff_v(g.deg_v());
  if (top.lc() < 0) num = -num;
  Rational scale(den, num);
  scale.canonicalize();
  return g * scale;
}

}  // namespace

ExactBiPoly bivariate_gcd(const ExactBiPoly& a, const ExactBiPoly& b) {
  if (a.is_zero()) return normalize_integer(b);
  if (b.is_zero()) return normalize_integer(a);
  UPoly x = to_upoly(a), y = to_upoly(b);
  const RatPoly cont = exact_gcd(content(x), content(y));
  x = primitive_part(x);
  y = primitive_part(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    UPoly r = prem(x, y);
    x = std::move(y);
    y = r.empty() ? r : primitive_part(r);
  }
  UPoly g = primitive_part(x);
  for (auto& c : g) c = c * cont;
  return normalize_integer(from_upoly(g));
}

ExactBiPoly cross_difference(const RatFunc& p, const RatFunc& q) {
  return ExactBiPoly::from_u(p.num) * ExactBiPoly::from_v(q.den) - ExactBiPoly::from_v(q.num) * ExactBiPoly::from_u(p.den);
}

ExactBiPoly sylvester_resultant(const std::vector<ExactBiPoly>& a, const std::vector<ExactBiPoly>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(ErrorCode::invalid_argument, "sylvester_resultant: inputs need positive formal degree");
  const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
  std::vector<std::vector<ExactBiPoly>> mat(size, std::vector<ExactBiPoly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) mat[r][r + k] = a[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) mat[n + r][r + k] = b[n - k];
  ExactBiPoly prev = ExactBiPoly::from_u(RatPoly::constant(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < size && mat[piv][k].is_zero()) ++piv;
      if (piv == size) return {};
      std::swap(mat[k], mat[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j)
        mat[i][j] = exact_div(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j], prev);
      mat[i][k] = ExactBiPoly{};
    }
    prev = mat[k][k];
  }
  ExactBiPoly d = mat[size - 1][size - 1];
  return negate ? d * Rational(-1) : d;
}

namespace {

void require_nonconstant(const ExactParametrization& p) {
  if (p.x.degree() < 1 || p.y.degree() < 1)
    throw Error(ErrorCode::degenerate, "parametrization has a constant component");
}

ExactBiPoly index_gcd(const ExactParametrization& p) {
  return bivariate_gcd(cross_difference(p.x, p.x), cross_difference(p.y, p.y));
}

// Coefficients in t of x * den(t) - num(t); x is placed in u or v.
std::vector<ExactBiPoly> implicit_generator(const RatFunc& p, bool x_in_u) {
  const int n = std::max(p.num.degree(), p.den.degree());
  std::vector<ExactBiPoly> out;
  for (int i = 0; i <= n; ++i) {
    std::vector<Rational> c = {-p.num[i], p.den[i]};
    const RatPoly poly(std::move(c));
    out.push_back(x_in_u ? ExactBiPoly::from_u(poly) : ExactBiPoly::from_v(poly));
  }
  return out;
}

RatFunc extract_component(const ExactBiPoly& l, int ell) {
  const RatPoly top = l.coeff_v(ell);
  const RatPoly next = l.coeff_v(ell - 1);
  return RatFunc{-next, top * Rational(ell)}.reduced();
}

}  // namespace

int tracing_index(const ExactParametrization& p) {
  require_nonconstant(p);
  return index_gcd(p).deg_u();
}

ExactReparam exact_reparametrize(const ExactParametrization& p) {
  require_nonconstant(p);
  ExactReparam out;
  out.S = index_gcd(p);
  out.ell = out.S.deg_u();
  if (out.ell == 1) {
    out.R = RatFunc{RatPoly{0, 1}, RatPoly::constant(1)};
    out.Q = p;
    out.pair = {-1, -1};
    return out;
  }
  const int m = out.S.deg_v();
  for (int i = m; i >= 0 && out.pair.first < 0; --i)
    for (int j = m; j >= 0; --j) {
      if (i == j) continue;
      const RatPoly ci = out.S.coeff_v(i), cj = out.S.coeff_v(j);
      if (ci.is_zero() || cj.is_zero() || (ci * cj).degree() < 1) continue;
      if (exact_gcd(ci, cj).degree() != 0) continue;
      out.pair = {i, j};
      out.R = RatFunc{ci, cj};
      break;
    }
  if (out.pair.first < 0) throw Error(ErrorCode::no_admissible_pair, "no admissible pair of coefficients in S");
  // s C_j(t) - C_i(t): coefficients in t, each a polynomial in u = s.
  std::vector<ExactBiPoly> b;
  const int nb = std::max(out.R.num.degree(), out.R.den.degree());
  for (int k = 0; k <= nb; ++k)
    b.push_back(ExactBiPoly::from_u(RatPoly(std::vector<Rational>{-out.R.num[k], out.R.den[k]})));
  RatFunc q[2];
  ExactBiPoly* ls[2] = {&out.L1, &out.L2};
  for (int k = 0; k < 2; ++k) {
    *ls[k] = sylvester_resultant(implicit_generator(p.component(k), false), b);
    q[k] = extract_component(*ls[k], out.ell);
  }
  out.Q = ExactParametrization{q[0], q[1]};
  return out;
}

ExactBiPoly exact_implicitize(const ExactParametrization& p) {
  require_nonconstant(p);
  return sylvester_resultant(implicit_generator(p.x, true), implicit_generator(p.y, false));
}

Rational parse_decimal(std::string_view text) {
  std::string s(text);
  std::size_t pos = 0;
  auto fail = [&]() -> Rational { throw Error(ErrorCode::parse, "invalid decimal literal '" + s + "'"); };
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  std::string digits;
  int frac = 0;
  bool any = false, dot = false;
  for (; pos < s.size(); ++pos) {
    const char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      any = true;
      if (dot) ++frac;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    try {
      exp10 = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      return fail();
    }
    pos += used;
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) return fail();
  mpz_class value(digits, 10);
  const long shift = exp10 - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(value * p10) : Rational(value, p10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace curverep::exact
