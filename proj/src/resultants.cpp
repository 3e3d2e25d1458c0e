#include "curverep/resultants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "curverep/error.hpp"

namespace curverep {

Matrix sylvester_matrix(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::invalid_argument, "sylvester_matrix: empty input");
  const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
  Matrix s(size, size);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s(r, r + k) = a[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s(n + r, r + k) = b[n - k];
  return s;
}

Complex resultant_uni(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::invalid_argument, "resultant of a zero polynomial");
  if (f.degree() == 0) return std::pow(f[0], g.degree());
  if (g.degree() == 0) return std::pow(g[0], f.degree());
  return det(sylvester_matrix(f.coeffs(), g.coeffs()));
}

namespace {

std::vector<double> chebyshev_nodes(int count) {
  std::vector<double> x(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    x[static_cast<std::size_t>(i)] = 2.0 * std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * count));
  return x;
}

int node_count(int degree) { return std::max(degree + 1, static_cast<int>(std::ceil(1.5 * (degree + 1)))); }

// res_t(first, second) with first indexed (t, y) and second indexed (t, z);
// result indexed (y, z).
BiPoly resultant_grid(const BiPoly& first, const BiPoly& second, int deg_y, int deg_z, ResultantPlan* plan) {
  if (first.deg_u() < 1 || second.deg_u() < 1)
    throw Error(ErrorCode::invalid_argument, "parametric resultant: inputs need positive t-degree");
  if (deg_y < 0 || deg_z < 0) throw Error(ErrorCode::invalid_argument, "parametric resultant: negative degree bound");
  const std::vector<double> ys = chebyshev_nodes(node_count(deg_y));
  const std::vector<double> zs = chebyshev_nodes(node_count(deg_z));
  const std::size_t wy = static_cast<std::size_t>(deg_y + 1), wz = static_cast<std::size_t>(deg_z + 1);
  const std::size_t rows = ys.size() * zs.size();
  Matrix a(rows, wy * wz);
  std::vector<Complex> vals(rows);
  double vmax = 0.0, vmin = std::numeric_limits<double>::infinity(), hadamard = 0.0;
  std::vector<std::vector<Complex>> first_at, second_at;
  for (double y : ys) first_at.push_back(first.eval_v(y).padded(first.rows()));
  for (double z : zs) second_at.push_back(second.eval_v(z).padded(second.rows()));
  std::size_t r = 0;
  for (std::size_t iy = 0; iy < ys.size(); ++iy)
    for (std::size_t iz = 0; iz < zs.size(); ++iz, ++r) {
      const Matrix syl = sylvester_matrix(first_at[iy], second_at[iz]);
      double h = 1.0;
      for (std::size_t i = 0; i < syl.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < syl.cols(); ++j) row += std::norm(syl(i, j));
        h *= std::sqrt(row);
      }
      hadamard = std::max(hadamard, h);
      vals[r] = det(syl);
      vmax = std::max(vmax, std::abs(vals[r]));
      vmin = std::min(vmin, std::abs(vals[r]));
      double py = 1.0;
      for (std::size_t i = 0; i < wy; ++i, py *= ys[iy]) {
        double pz = 1.0;
        for (std::size_t j = 0; j < wz; ++j, pz *= zs[iz]) a(r, i * wz + j) = py * pz;
      }
    }
  const LstsqResult fit = lstsq(a, vals);
  double vnorm = 0.0;
  for (const auto& v : vals) vnorm += std::norm(v);
  vnorm = std::sqrt(vnorm);
  const double rel = vnorm > 0.0 ? fit.residual / vnorm : 0.0;
  if (plan) {
    plan->deg_first = deg_y;
    plan->deg_second = deg_z;
    plan->first_nodes = ys;
    plan->second_nodes = zs;
    plan->fit_residual = rel;
    plan->max_abs_value = vmax;
    plan->min_abs_value = vmin;
  }
  // Determinants are accurate to about eps times the Hadamard bound, which
  // dominates kInterpolationTol when the values are small next to it.
  const double noise = vnorm > 0.0 ? 1e3 * std::numeric_limits<double>::epsilon() * hadamard * std::sqrt(static_cast<double>(rows)) / vnorm : 0.0;
  if (rel > std::max(kInterpolationTol, noise)) {
    std::ostringstream msg;
    msg << "interpolation degree mismatch: relative fit residual " << rel;
    throw Error(ErrorCode::degree_mismatch, msg.str());
  }
  return BiPoly(wy, wz, fit.x);
}

}  // namespace

BiPoly parametric_resultant_t(const BiPoly& g, const BiPoly& b, int deg_x, int deg_s, ResultantPlan* plan) {
  return resultant_grid(g, b, deg_x, deg_s, plan).swapped();
}

BiPoly implicitize(const PlaneParametrization& p, ResultantPlan* plan) {
  if (p.x.is_constant() || p.y.is_constant())
    throw Error(ErrorCode::degenerate, "implicitize: constant component");
  auto generator = [](const RationalFunction& r) {
    // x * den(t) - num(t), indexed (t, x)
    const int n = r.degree();
    BiPoly g = BiPoly::zeros(n, 1);
    for (int i = 0; i <= n; ++i) {
      g.at(i, 0) = -r.num()[i];
      g.at(i, 1) = r.den()[i];
    }
    return g.trimmed(0.0);
  };
  const BiPoly f = resultant_grid(generator(p.x), generator(p.y), p.y.degree(), p.x.degree(), plan);
  return normalized(f);
}

BiPoly leading_form(const BiPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::invalid_argument, "leading_form of the zero polynomial");
  // Interpolated inputs are only trusted to kInterpolationTol.
  const double tol = kInterpolationTol * f.norm_inf();
  int top = 0;
  for (int i = 0; i <= f.deg_u(); ++i)
    for (int j = 0; j <= f.deg_v(); ++j)
      if (std::abs(f.coeff(i, j)) > tol) top = std::max(top, i + j);
  return f.homogeneous_part(top);
}

BiPoly leading_form_at_infinity(const PlaneParametrization& p) {
  const Poly& den = p.x.den();
  const BiPoly dx = BiPoly::from_u(den), dy = BiPoly::from_u(p.y.den());
  if (normalized_distance(dx, dy) > kInterpolationTol)
    throw Error(ErrorCode::not_applicable, "leading_form_at_infinity: components need a shared denominator");
  if (den.degree() < 1 || p.x.num().degree() > den.degree() || p.y.num().degree() > den.degree())
    throw Error(ErrorCode::not_applicable, "leading_form_at_infinity: numerator degree exceeds denominator degree");
  BiPoly form = BiPoly::zeros(0, 0);
  form.at(0, 0) = 1.0;
  for (const Complex s : roots(den)) {
    const Complex a = -p.y.num()(s), b = p.x.num()(s);
    const double n = std::hypot(std::abs(a), std::abs(b));
    BiPoly factor = BiPoly::zeros(1, 1);
    factor.at(1, 0) = a / n;
    factor.at(0, 1) = b / n;
    form = form * factor;
  }
  return normalized(form);
}

}  // namespace curverep
