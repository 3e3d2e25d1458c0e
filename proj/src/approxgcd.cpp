#include "curverep/approxgcd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "curverep/error.hpp"
#include "curverep/linalg.hpp"

namespace curverep {

namespace {

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

// ||a - b||_2 over the padded coefficient vectors.
double distance2(const Poly& a, const Poly& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  const auto pa = a.padded(n), pb = b.padded(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(pa[i] - pb[i]);
  return std::sqrt(s);
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix m(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) m(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j) m(top.rows() + i, j) = bottom(i, j);
  return m;
}

Matrix side_by_side(const Matrix& left, const Matrix& right) {
  const std::size_t rows = std::max(left.rows(), right.rows());
  Matrix m(rows, left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i)
    for (std::size_t j = 0; j < left.cols(); ++j) m(i, j) = left(i, j);
  for (std::size_t i = 0; i < right.rows(); ++i)
    for (std::size_t j = 0; j < right.cols(); ++j) m(i, left.cols() + j) = right(i, j);
  return m;
}

std::vector<Complex> concat(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Best cofactor x of length len with conv(d, x) ~ target; d has formal
// length ld, so target must have at most ld + len - 1 coefficients.
Poly fit_cofactor(const Poly& d, std::size_t ld, const Poly& target, std::size_t len) {
  const Matrix c = convolution(std::span<const Complex>(d.padded(ld)), len);
  return Poly::raw(lstsq(c, target.padded(c.rows())).x);
}

Poly fit_common(const Poly& f1, std::size_t lf, const Poly& g1, std::size_t lg, const Poly& f, const Poly& g,
                std::size_t len) {
  const Matrix cf = convolution(std::span<const Complex>(f1.padded(lf)), len);
  const Matrix cg = convolution(std::span<const Complex>(g1.padded(lg)), len);
  return Poly::raw(lstsq(stack(cf, cg), concat(f.padded(cf.rows()), g.padded(cg.rows()))).x);
}

// Coefficient array of a bivariate polynomial with a fixed shape.
struct Grid {
  std::size_t rows = 0, cols = 0;
  std::vector<Complex> c;
};

Grid grid_of(const BiPoly& b, std::size_t rows, std::size_t cols) {
  Grid g{rows, cols, std::vector<Complex>(rows * cols)};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g.c[i * cols + j] = b.coeff(static_cast<int>(i), static_cast<int>(j));
  return g;
}

// Matrix of X -> F * X for X of shape n1 x n2.
Matrix biconvolution(const Grid& f, std::size_t n1, std::size_t n2) {
  const std::size_t oc = f.cols + n2 - 1;
  Matrix m((f.rows + n1 - 1) * oc, n1 * n2);
  for (std::size_t a = 0; a < f.rows; ++a)
    for (std::size_t b = 0; b < f.cols; ++b) {
      const Complex v = f.c[a * f.cols + b];
      if (v == Complex{}) continue;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) m((a + i) * oc + b + j, i * n2 + j) += v;
    }
  return m;
}

// Alternating least squares on H1 ~ S A1, H2 ~ S A2 over all coefficients,
// starting from the S fitted to the specializations.
std::vector<Complex> refine_common_factor(const BiPoly& h1, const BiPoly& h2, std::vector<Complex> s,
                                          std::size_t w, double& residual) {
  const Grid g1 = grid_of(h1 * (1.0 / h1.norm2()), h1.rows(), h1.cols());
  const Grid g2 = grid_of(h2 * (1.0 / h2.norm2()), h2.rows(), h2.cols());
  for (const Grid* g : {&g1, &g2})
    if (g->rows < w || g->cols < w) return s;
  constexpr int kMaxSweeps = 20;
  double last = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Grid sg{w, w, s};
    const LstsqResult a1 = lstsq(biconvolution(sg, g1.rows - w + 1, g1.cols - w + 1), g1.c);
    const LstsqResult a2 = lstsq(biconvolution(sg, g2.rows - w + 1, g2.cols - w + 1), g2.c);
    const double res = std::hypot(a1.residual, a2.residual);
    residual = std::min(residual, res / std::sqrt(2.0));
    if (res > last * (1.0 - 1e-3)) break;
    last = res;
    const Matrix m = stack(biconvolution({g1.rows - w + 1, g1.cols - w + 1, a1.x}, w, w),
                           biconvolution({g2.rows - w + 1, g2.cols - w + 1, a2.x}, w, w));
    s = lstsq(m, concat(g1.c, g2.c)).x;
  }
  return s;
}

struct Candidate {
  Poly d;  // monic, degree k
};

constexpr double kRankGap = 30.0;

Matrix subresultant(const Poly& fn, const Poly& gn, int k) {
  const std::size_t la = static_cast<std::size_t>(gn.degree() - k + 1);
  const std::size_t lb = static_cast<std::size_t>(fn.degree() - k + 1);
  return side_by_side(convolution(fn, la), convolution(gn, lb));
}

// Degree-k gcd candidate of unit-norm fn, gn from the null vector of the
// k-th Sylvester subresultant matrix, refined by alternating least squares.
std::optional<Candidate> candidate(const Poly& fn, const Poly& gn, int k, const SingularPair& sp) {
  const int n = fn.degree(), m = gn.degree();
  const std::size_t la = static_cast<std::size_t>(m - k + 1);  // g1 length
  const std::size_t lb = static_cast<std::size_t>(n - k + 1);  // f1 length
  Poly g1 = Poly::raw(std::vector<Complex>(sp.v.begin(), sp.v.begin() + static_cast<std::ptrdiff_t>(la)));
  Poly f1 = -Poly::raw(std::vector<Complex>(sp.v.begin() + static_cast<std::ptrdiff_t>(la), sp.v.end()));
  if (f1.is_zero() || g1.is_zero()) return std::nullopt;
  const std::size_t ld = static_cast<std::size_t>(k + 1);
  Poly d = fit_common(f1, lb, g1, la, fn, gn, ld);
  for (int iter = 0; iter < 4; ++iter) {
    if (d.degree() < k) return std::nullopt;
    f1 = fit_cofactor(d, ld, fn, lb);
    g1 = fit_cofactor(d, ld, gn, la);
    d = fit_common(f1, lb, g1, la, fn, gn, ld);
  }
  if (d.degree() != k || std::abs(d.lc()) < 1e-12 * d.norm_inf()) return std::nullopt;
  return Candidate{d.monic()};
}

EgcdCertificate certify_candidate(const Poly& f, const Poly& g, const Poly& d, double eps) {
  const int n = f.degree(), m = g.degree(), k = d.degree();
  EgcdCertificate c;
  c.eps = eps;
  c.d = d;
  if (k == 0) {
    c.f1 = f * (1.0 / d.lc());
    c.g1 = g * (1.0 / d.lc());
  } else {
    const std::size_t ld = static_cast<std::size_t>(k + 1);
    c.f1 = fit_cofactor(d, ld, f, static_cast<std::size_t>(n - k + 1));
    c.g1 = fit_cofactor(d, ld, g, static_cast<std::size_t>(m - k + 1));
  }
  const std::size_t lu = static_cast<std::size_t>(std::max(m - k, 1));
  const std::size_t lv = static_cast<std::size_t>(std::max(n - k, 1));
  const Matrix bez = side_by_side(convolution(std::span<const Complex>(f.padded(static_cast<std::size_t>(n + 1))), lu),
                                  convolution(std::span<const Complex>(g.padded(static_cast<std::size_t>(m + 1))), lv));
  const auto sol = lstsq(bez, d.padded(bez.rows()));
  c.u = Poly::raw(std::vector<Complex>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(lu)));
  c.v = Poly::raw(std::vector<Complex>(sol.x.begin() + static_cast<std::ptrdiff_t>(lu), sol.x.end()));
  c.r_bezout = distance2(c.u * f + c.v * g, d);
  c.r_f = distance2(f, d * c.f1);
  c.r_g = distance2(g, d * c.g1);
  c.norm_f = f.norm2();
  c.norm_g = g.norm2();
  c.norm_fguvd = std::max({c.norm_f, c.norm_g, c.u.norm2(), c.v.norm2(), d.norm2()});
  c.accepted = c.satisfies(eps);
  return c;
}

}  // namespace

bool EgcdCertificate::satisfies(double tol) const {
  return r_bezout < tol * norm_fguvd && r_f < tol * norm_f && r_g < tol * norm_g;
}

EgcdCertificate egcd_uni(const Poly& f, const Poly& g, double eps) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::invalid_argument, "egcd of two zero polynomials");
  if (f.is_zero() || g.is_zero()) {
    const Poly& h = f.is_zero() ? g : f;
    EgcdCertificate c;
    c.eps = eps;
    c.d = h.monic();
    const Complex l = h.lc();
    c.f1 = f.is_zero() ? Poly{} : Poly::constant(l);
    c.g1 = g.is_zero() ? Poly{} : Poly::constant(l);
    (f.is_zero() ? c.v : c.u) = Poly::constant(1.0 / l);
    c.r_bezout = distance2(c.u * f + c.v * g, c.d);
    c.r_f = distance2(f, c.d * c.f1);
    c.r_g = distance2(g, c.d * c.g1);
    c.norm_f = f.norm2();
    c.norm_g = g.norm2();
    c.norm_fguvd = std::max({c.norm_f, c.norm_g, std::abs(1.0 / l), c.d.norm2()});
    c.accepted = true;
    return c;
  }
  const Poly fn = f * (1.0 / f.norm2());
  const Poly gn = g * (1.0 / g.norm2());
  // A degree k is a candidate only where the subresultant profile drops by
  // kRankGap: sigma_k * kRankGap <= sigma_{k+1}, with sigma past the last
  // degree taken as 1. The residual test alone lets a loose eps merge a
  // genuine common factor with roots that are merely close.
  const int top = std::min(f.degree(), g.degree());
  std::vector<SingularPair> sv;
  for (int k = 1; k <= top; ++k) sv.push_back(min_singular(subresultant(fn, gn, k)));
  for (int k = top; k >= 1; --k) {
    const SingularPair& sp = sv[static_cast<std::size_t>(k - 1)];
    const double next = k < top ? sv[static_cast<std::size_t>(k)].sigma : 1.0;
    if (sp.sigma * kRankGap > next) continue;
    const auto cand = candidate(fn, gn, k, sp);
    if (!cand) continue;
    EgcdCertificate c = certify_candidate(f, g, cand->d, eps);
    if (c.accepted) return c;
  }
  return certify_candidate(f, g, Poly::constant(1.0), eps);
}

std::optional<EgcdCertificate> egcd_at_degree(const Poly& f, const Poly& g, int k, double eps) {
  if (k < 1 || k > std::min(f.degree(), g.degree())) return std::nullopt;
  const Poly fn = f * (1.0 / f.norm2());
  const Poly gn = g * (1.0 / g.norm2());
  const auto cand = candidate(fn, gn, k, min_singular(subresultant(fn, gn, k)));
  if (!cand) return std::nullopt;
  return certify_candidate(f, g, cand->d, eps);
}

std::vector<DegreeResidual> gcd_degree_profile(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::invalid_argument, "gcd_degree_profile: zero input");
  const Poly fn = f * (1.0 / f.norm2());
  const Poly gn = g * (1.0 / g.norm2());
  const int n = f.degree(), m = g.degree();
  std::vector<DegreeResidual> out;
  for (int k = 1; k <= std::min(n, m); ++k) out.push_back({k, min_singular(subresultant(fn, gn, k)).sigma});
  return out;
}

RationalFunction reduce(const RationalFunction& r, double eps) {
  if (r.num().is_zero()) return RationalFunction(Poly{}, Poly::constant(1.0));
  Poly num = r.num(), den = r.den();
  while (num.degree() > 0 && den.degree() > 0) {
    const EgcdCertificate c = egcd_uni(num, den, eps);
    if (c.degree() < 1) break;
    num = c.f1;
    den = c.g1;
  }
  return RationalFunction(num, den);
}

BivariateGcdResult approx_improper_index(const PlaneParametrization& p, double eps, int n_samples,
                                         std::uint64_t seed) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "eps must be positive");
  if (p.x.is_constant() || p.y.is_constant())
    throw Error(ErrorCode::degenerate, "parametrization has a constant component");
  const BiPoly h1 = cross_difference(p.x, p.x);
  const BiPoly h2 = cross_difference(p.y, p.y);
  const bool real = p.is_real();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&]() -> Complex {
    for (;;) {
      Complex s;
      if (real) {
        s = -2.0 + 4.0 * unit(rng);
      } else {
        const double rad = 2.0 * std::sqrt(unit(rng));
        const double ang = 2.0 * std::numbers::pi * unit(rng);
        s = std::polar(rad, ang);
      }
      bool ok = true;
      for (const Poly* den : {&p.x.den(), &p.y.den()})
        if (std::abs((*den)(s)) < 1e-6 * den->norm_inf()) ok = false;
      if (ok) return s;
    }
  };

  BivariateGcdResult res;
  std::vector<Poly> gcds;
  auto take_sample = [&]() {
    const Complex s = draw();
    const EgcdCertificate c = egcd_uni(h1.eval_v(s), h2.eval_v(s), eps);
    res.sample_points.push_back(s);
    res.sample_degrees.push_back(c.degree());
    gcds.push_back(c.d);
  };

  constexpr int kPilot = 9;
  for (int i = 0; i < kPilot; ++i) take_sample();
  auto majority = [&]() {
    std::map<int, int> count;
    for (int d : res.sample_degrees) ++count[d];
    int best = -1, votes = -1;
    for (const auto& [deg, c] : count)  // ascending degree, so ties keep the smaller
      if (c > votes) {
        best = deg;
        votes = c;
      }
    return best;
  };
  int ell = majority();
  const int unknowns = (ell + 1) * (ell + 1);
  if (n_samples > 0 && n_samples <= unknowns) {
    std::ostringstream msg;
    msg << "n_samples = " << n_samples << " must exceed " << unknowns << " unknown coefficients";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  const int total = n_samples > 0 ? n_samples : 3 * unknowns;
  while (static_cast<int>(res.sample_points.size()) < total) take_sample();
  if (static_cast<int>(res.sample_points.size()) > total) {
    res.sample_points.resize(static_cast<std::size_t>(total));
    res.sample_degrees.resize(static_cast<std::size_t>(total));
    gcds.resize(static_cast<std::size_t>(total));
  }
  ell = majority();
  const int agree = static_cast<int>(std::count(res.sample_degrees.begin(), res.sample_degrees.end(), ell));
  const int n = static_cast<int>(res.sample_degrees.size());
  if (n - agree > 0.4 * n) {
    std::ostringstream msg;
    msg << "unstable index: sample gcd degrees";
    for (int d : res.sample_degrees) msg << ' ' << d;
    throw Error(ErrorCode::unstable_index, msg.str());
  }
  if (ell < 1) throw Error(ErrorCode::degenerate, "gcd of cross differences has degree 0");
  res.ell = ell;

  // The gap rule picks ell, but a pair within eps of one with a degree
  // ell + 1 common factor leaves the index undetermined by eps alone.
  for (std::size_t k = 0; k < gcds.size(); ++k) {
    if (res.sample_degrees[k] != ell) continue;
    const Complex s = res.sample_points[k];
    const Poly f = h1.eval_v(s), g = h2.eval_v(s);
    if (ell + 1 > std::min(f.degree(), g.degree())) continue;
    const double sigma = min_singular(subresultant(f * (1.0 / f.norm2()), g * (1.0 / g.norm2()), ell + 1)).sigma;
    if (sigma < eps) ++res.ambiguous_samples;
    res.next_gap = std::min(res.next_gap, sigma);
  }
  res.agreeing_samples = agree;

  // Fit S(t, s) = sum c_ij t^i s^j: at every sample with the majority degree
  // the coefficient vector of S(., s_k) must be parallel to the gcd d_k, so
  // its component orthogonal to d_k is driven to zero.
  const std::size_t w = static_cast<std::size_t>(ell + 1);
  std::vector<std::size_t> used;
  for (std::size_t k = 0; k < gcds.size(); ++k)
    if (res.sample_degrees[k] == ell) used.push_back(k);
  Matrix a(used.size() * w, w * w);
  for (std::size_t r = 0; r < used.size(); ++r) {
    const std::size_t k = used[r];
    std::vector<Complex> dh = gcds[k].padded(w);
    const double dn = norm2(dh);
    for (auto& c : dh) c /= dn;
    std::vector<Complex> spow(w);
    spow[0] = 1.0;
    for (std::size_t j = 1; j < w; ++j) spow[j] = spow[j - 1] * res.sample_points[k];
    for (std::size_t row = 0; row < w; ++row)
      for (std::size_t i = 0; i < w; ++i) {
        const Complex proj = (row == i ? 1.0 : 0.0) - dh[row] * std::conj(dh[i]);
        if (proj == Complex{}) continue;
        for (std::size_t j = 0; j < w; ++j) a(r * w + row, i * w + j) = proj * spow[j];
      }
  }
  const SingularPair sp = min_singular(a);
  const double fro = a.frobenius();
  res.fit_residual = fro > 0.0 ? sp.sigma / fro : 0.0;
  res.factor_residual = std::numeric_limits<double>::infinity();
  const std::vector<Complex> v = refine_common_factor(h1, h2, sp.v, w, res.factor_residual);
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  const Complex scale = 1.0 / v[imax];
  std::vector<Complex> coeffs(w * w);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = v[i] * scale;
    if (real) coeffs[i] = coeffs[i].real();
  }
  res.S = BiPoly(w, w, std::move(coeffs));
  return res;
}

}  // namespace curverep
