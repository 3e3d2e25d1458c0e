#include "curverep/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curverep/error.hpp"

namespace curverep {

namespace {

// x * den(s) - num(s), indexed (s, x).
BiPoly linear_in_x(const RationalFunction& q) {
  const int n = std::max(q.num().degree(), q.den().degree());
  BiPoly b = BiPoly::zeros(n, 1);
  for (int i = 0; i <= n; ++i) {
    b.at(i, 0) = -q.num()[i];
    b.at(i, 1) = q.den()[i];
  }
  return b.trimmed(0.0);
}

// Rescales so that the x^ell coefficient (a polynomial in s) has unit
// infinity norm.
BiPoly normalize_top(const BiPoly& l, int ell) {
  const double n = l.coeff_v(ell).norm_inf();
  if (n == 0.0) throw Error(ErrorCode::degenerate, "degenerate leading coefficient in x");
  return l * Complex(1.0 / n);
}

// Slice coefficients below this fraction of the larger slice are
// interpolation noise; left in place they inflate the degrees of Q~.
constexpr double kSliceTol = 1e-9;

RationalFunction ratio_from_slices(const Poly& lower, const Poly& top, int ell) {
  if (top.is_zero() || top.norm_inf() == 0.0)
    throw Error(ErrorCode::degenerate, "degenerate leading coefficient");
  const double tol = kSliceTol * std::max(lower.norm_inf(), top.norm_inf());
  return RationalFunction(lower.trimmed(tol) * Complex(-1.0 / ell), top.trimmed(tol));
}

double rf_gap(const RationalFunction& a, const RationalFunction& b) {
  const Complex sa = a.den().lc(), sb = b.den().lc();
  const std::size_t n = static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1);
  double gap = 0.0, scale = 0.0;
  for (const auto& [pa, pb] : {std::pair{a.num(), b.num()}, std::pair{a.den(), b.den()}}) {
    const auto va = pa.padded(n), vb = pb.padded(n);
    for (std::size_t i = 0; i < n; ++i) {
      gap = std::max(gap, std::abs(va[i] / sa - vb[i] / sb));
      scale = std::max(scale, std::abs(va[i] / sa));
    }
  }
  return scale > 0.0 ? gap / scale : gap;
}

}  // namespace

RChoice build_R(const BiPoly& S, double eps) {
  if (S.is_zero() || S.deg_u() < 2) throw Error(ErrorCode::invalid_argument, "build_R needs deg_t(S) >= 2");
  const double tol = eps * S.norm_inf();
  std::vector<Poly> c;
  for (int j = 0; j <= S.deg_v(); ++j) c.push_back(S.coeff_v(j).trimmed(tol));
  RChoice best;
  bool admissible = false;
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    for (int j = 0; j < static_cast<int>(c.size()); ++j) {
      if (i == j || c[i].is_zero() || c[j].is_zero()) continue;
      if (c[i].degree() + c[j].degree() < 1) continue;
      if (egcd_uni(c[i], c[j], eps).degree() != 0) continue;
      admissible = true;
      const RationalFunction r(c[i], c[j]);
      const double res = normalized_distance(S, num_cross_difference_R(r));
      if (best.i < 0 || res < best.residual) {
        best.R = r;
        best.i = i;
        best.j = j;
        best.residual = res;
      }
    }
  if (!admissible) throw Error(ErrorCode::no_admissible_pair, "no admissible pair (C_i, C_j) in S");
  if (best.residual > eps) {
    std::ostringstream msg;
    msg << "S is not Mobius-like: best residual " << best.residual << " exceeds eps " << eps;
    throw Error(ErrorCode::not_mobius_like, msg.str());
  }
  return best;
}

LPair compute_L(const PlaneParametrization& p, const RationalFunction& r) {
  const int ell = r.degree();
  // s * C_j(t) - C_i(t), indexed (t, s)
  const BiPoly b = linear_in_x(r);
  LPair out;
  ResultantPlan* plans[2] = {&out.plan1, &out.plan2};
  BiPoly* ls[2] = {&out.L1, &out.L2};
  for (int k = 0; k < 2; ++k) {
    const RationalFunction& pk = p.component(k);
    const BiPoly g = linear_in_x(pk);  // indexed (t, x)
    *ls[k] = normalize_top(parametric_resultant_t(g, b, ell, pk.degree(), plans[k]), ell);
  }
  return out;
}

PlaneParametrization extract_Qtilde(const BiPoly& l1, const BiPoly& l2, int ell) {
  if (ell < 1) throw Error(ErrorCode::invalid_argument, "extract_Qtilde: ell must be positive");
  RationalFunction q[2];
  const BiPoly* ls[2] = {&l1, &l2};
  for (int k = 0; k < 2; ++k) {
    if (ls[k]->deg_v() != ell) throw Error(ErrorCode::degenerate, "extract_Qtilde: L_k has wrong degree in x");
    const Poly top = ls[k]->coeff_v(ell);
    if (top.norm_inf() < 1e-12 * ls[k]->norm_inf())
      throw Error(ErrorCode::degenerate, "degenerate leading coefficient");
    q[k] = ratio_from_slices(ls[k]->coeff_v(ell - 1), top, ell);
  }
  return {q[0], q[1]};
}

PlaneParametrization extract_Qtilde_derivative(const BiPoly& l1, const BiPoly& l2, int ell) {
  RationalFunction q[2];
  const BiPoly* ls[2] = {&l1, &l2};
  for (int k = 0; k < 2; ++k) {
    BiPoly d = *ls[k];
    for (int i = 0; i + 1 < ell; ++i) d = d.derivative_v();
    if (d.deg_v() != 1) throw Error(ErrorCode::degenerate, "derivative route: expected a linear polynomial in x");
    // d = a(s) + b(s) x, root x = -a / b
    q[k] = RationalFunction(d.coeff_v(0) * Complex(-1.0), d.coeff_v(1));
  }
  return {q[0], q[1]};
}

PlaneParametrization simplify_Q(const PlaneParametrization& qt, double eps, std::array<int, 2> target) {
  RationalFunction out[2];
  for (int k = 0; k < 2; ++k) {
    RationalFunction r = qt.component(k);
    if (target[k] >= 0) {
      const int drop = r.degree() - target[k];
      const auto c = drop > 0 ? egcd_at_degree(r.num(), r.den(), drop, eps) : std::nullopt;
      if (c) {
        out[k] = RationalFunction(c->f1, c->g1).monic_den();
        continue;
      }
      if (drop == 0) {
        out[k] = r.monic_den();
        continue;
      }
    }
    for (;;) {
      const RationalFunction next = reduce(r, eps);
      const bool dropped = next.degree() < r.degree();
      r = next;
      if (!dropped) break;
    }
    out[k] = r.monic_den();
  }
  return {out[0], out[1]};
}

Certificate certify(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                    const BiPoly& l1, const BiPoly& l2, double eps) {
  const int ell = r.degree();
  Certificate cert;
  const BiPoly* ls[2] = {&l1, &l2};
  for (int k = 0; k < 2; ++k) {
    const BiPoly l = normalize_top(*ls[k], ell);
    const BiPoly t = normalize_top(linear_in_x(q.component(k)).pow(ell), ell);
    const int du = std::max(l.deg_u(), t.deg_u()), dv = std::max(l.deg_v(), t.deg_v());
    Complex inner{};
    for (int i = 0; i <= du; ++i)
      for (int j = 0; j <= dv; ++j) inner += std::conj(t.coeff(i, j)) * l.coeff(i, j);
    const Complex phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : Complex(1.0);
    const BiPoly e = l - t * phase;
    const double num = e.is_zero() ? 0.0 : numerator_along(e, r, p.component(k)).norm_inf();
    cert.h_norm[k] = cross_difference(p.component(k), q.component(k)).norm_inf();
    const double denom = std::pow(cert.h_norm[k], ell);
    cert.ratio[k] = denom > 0.0 ? num / denom : (num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  }
  const double limit = std::pow(eps, ell);
  cert.holds = cert.ratio[0] <= limit && cert.ratio[1] <= limit;
  cert.eps_bar = cert.holds ? eps : std::pow(std::max(cert.ratio[0], cert.ratio[1]), 1.0 / ell);
  return cert;
}

ReparamReport reparametrize(const PlaneParametrization& p, double eps, const ReparamOptions& opts) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "eps must be positive", "input");
  BivariateGcdResult idx;
  // A later failure on an index or S that eps does not pin down is reported
  // as an unstable index.
  auto stage = [&idx, eps](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      const Error tagged = e.stage().empty() ? e.with_stage(name) : e;
      if (e.code() == ErrorCode::unstable_index || idx.ell == 0) throw tagged;
      std::ostringstream msg;
      if (idx.ambiguous())
        msg << "unstable index: a degree " << idx.ell + 1 << " factor is within eps at " << idx.ambiguous_samples
            << " of " << idx.agreeing_samples << " samples (" << e.what() << ")";
      else if (idx.s_uncertainty() > eps)
        msg << "unstable index: S is only determined to about " << idx.s_uncertainty() << " (" << e.what() << ")";
      else
        throw tagged;
      throw Error(ErrorCode::unstable_index, msg.str(), tagged.stage());
    }
  };
  ReparamReport rep;
  rep.eps = eps;

  idx = stage("index", [&] { return approx_improper_index(p, eps, opts.n_samples, opts.seed); });
  rep.S = idx.S;
  rep.ell = idx.ell;
  rep.index_fit_residual = idx.fit_residual;
  rep.sample_points = idx.sample_points;
  rep.sample_degrees = idx.sample_degrees;

  std::ostringstream msg;
  if (rep.ell == 1) {
    rep.R = RationalFunction::identity();
    rep.Q = p;
    rep.Qtilde = p;
    rep.eps_bar = eps;
    msg << "P is already ε-proper (ε = " << eps << "); Q = P, R = t";
    rep.message = msg.str();
    return rep;
  }

  const RChoice choice = stage("build_R", [&] { return build_R(rep.S, eps); });
  rep.R = choice.R;
  rep.pair_choice = {choice.i, choice.j};
  rep.pair_residual = choice.residual;
  if (rep.R.degree() != rep.ell) {
    // A trimmed coefficient can lower deg R below the index; the resultant
    // degree bounds below rely on deg R.
    rep.ell = rep.R.degree();
    if (rep.ell < 2) throw Error(ErrorCode::degenerate, "R has degree below 2", "build_R");
  }

  const LPair ls = stage("resultant", [&] { return compute_L(p, rep.R); });
  rep.resultant_fit = std::max(ls.plan1.fit_residual, ls.plan2.fit_residual);

  rep.Qtilde = stage("extract", [&] { return extract_Qtilde(ls.L1, ls.L2, rep.ell); });
  const PlaneParametrization alt = stage("extract", [&] { return extract_Qtilde_derivative(ls.L1, ls.L2, rep.ell); });
  rep.extraction_gap = std::max(rf_gap(rep.Qtilde.x, alt.x), rf_gap(rep.Qtilde.y, alt.y));

  // deg p_k = deg q_k * deg R for reduced components, which fixes the
  // degree each component of Q must end up with.
  std::array<int, 2> target{-1, -1};
  for (int k = 0; k < 2; ++k)
    if (p.component(k).degree() % rep.ell == 0) target[k] = p.component(k).degree() / rep.ell;
  rep.Q = stage("simplify", [&] { return simplify_Q(rep.Qtilde, eps, target); });

  const Certificate cert = stage("certify", [&] { return certify(p, rep.Q, rep.R, ls.L1, ls.L2, eps); });
  rep.eps_bar = cert.eps_bar;
  rep.cert_ratio = cert.ratio;
  if (cert.holds)
    msg << "Q is an ε-proper reparametrization of P (ε = " << eps << ")";
  else
    msg << "Q is an ε̄-proper reparametrization of P (ε̄ = " << cert.eps_bar << ")";
  rep.message = msg.str();
  return rep;
}

}  // namespace curverep
