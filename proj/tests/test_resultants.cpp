#include <doctest.h>

#include "curverep/cli.hpp"
#include "curverep/error.hpp"
#include "curverep/reparam.hpp"
#include "curverep/resultants.hpp"
#include "support.hpp"

using namespace curverep;
using testing::Gen;
namespace ex = curverep::exact;

namespace {

// Sylvester resultant over Q of two random bivariate inputs, used as the
// oracle for the evaluation-interpolation route.
struct RandomInstance {
  BiPoly g, b;  // (t, x) and (t, s)
  ex::ExactBiPoly expected;  // (s, x)
  int deg_x = 0, deg_s = 0;
};

RandomInstance random_instance(Gen& gen) {
  const int tg = gen.integer(1, 4), tb = gen.integer(1, 3);
  const int xg = gen.integer(1, 2), sb = gen.integer(1, 2);
  ex::ExactBiPoly eg = ex::ExactBiPoly::zeros(tg, xg), eb = ex::ExactBiPoly::zeros(tb, sb);
  for (int i = 0; i <= tg; ++i)
    for (int j = 0; j <= xg; ++j) eg.at(i, j) = gen.integer(-4, 4);
  for (int i = 0; i <= tb; ++i)
    for (int j = 0; j <= sb; ++j) eb.at(i, j) = gen.integer(-4, 4);
  eg.at(tg, 0) = gen.integer(1, 3);
  eb.at(tb, 0) = gen.integer(1, 3);
  eg.trim();
  eb.trim();

  // Outer variable t; the coefficients live in (u, v) = (s, x).
  std::vector<ex::ExactBiPoly> a(static_cast<std::size_t>(tg + 1)), c(static_cast<std::size_t>(tb + 1));
  for (int i = 0; i <= tg; ++i) a[static_cast<std::size_t>(i)] = ex::ExactBiPoly::from_v(eg.coeff_u(i));
  for (int i = 0; i <= tb; ++i) c[static_cast<std::size_t>(i)] = ex::ExactBiPoly::from_u(eb.coeff_u(i));
  return {eg.to_bipoly(), eb.to_bipoly(), ex::sylvester_resultant(a, c), xg * tb, sb * tg};
}

// |f(x1, x2)| relative to the largest monomial term.
double relative_value(const BiPoly& f, Complex x1, Complex x2) {
  Complex acc = 0.0;
  double scale = 0.0;
  for (int a = 0; a <= f.deg_u(); ++a)
    for (int b = 0; b <= f.deg_v(); ++b) {
      const Complex term = f.coeff(a, b) * std::pow(x1, a) * std::pow(x2, b);
      acc += term;
      scale = std::max(scale, std::abs(term));
    }
  return std::abs(acc) / std::max(scale, 1e-300);
}

double relative_gap(const BiPoly& a, const BiPoly& b) {
  return (a - b).norm_inf() / std::max(b.norm_inf(), 1e-300);
}

}  // namespace

TEST_CASE("resultant of two linear polynomials") {
  Gen g(41);
  for (int rep = 0; rep < 20; ++rep) {
    const double a = g.real(-5, 5), b = g.real(-5, 5);
    CHECK(std::abs(resultant_uni(Poly{-a, 1}, Poly{-b, 1}) - Complex(a - b)) < 1e-13);
  }
}

TEST_CASE("resultant vanishes on a shared factor") {
  const Poly f = Poly{-1, 1} * Poly{4, 0, 1}, h = Poly{-1, 1} * Poly{2, 3};
  CHECK(std::abs(resultant_uni(f, h)) <= 1e-10 * f.norm_inf() * h.norm_inf());
}

TEST_CASE("resultant equals the root product formula") {
  Gen g(42);
  for (int rep = 0; rep < 20; ++rep) {
    const Poly f = g.complex_poly(3), h = g.complex_poly(3);
    Complex prod = std::pow(f.lc(), h.degree());
    for (Complex r : roots(f)) prod *= h(r);
    CHECK(std::abs(resultant_uni(f, h) - prod) <= 1e-8 * std::abs(prod));
  }
}

TEST_CASE("resultant is antisymmetric up to the degree sign") {
  Gen g(43);
  for (int rep = 0; rep < 30; ++rep) {
    const Poly f = g.complex_poly(g.integer(1, 5)), h = g.complex_poly(g.integer(1, 5));
    const double sign = (f.degree() * h.degree()) % 2 ? -1.0 : 1.0;
    const Complex a = resultant_uni(f, h), b = resultant_uni(h, f);
    CHECK(std::abs(a - sign * b) <= 1e-10 * std::abs(a));
  }
}

TEST_CASE("constant argument of resultant_uni") {
  CHECK(std::abs(resultant_uni(Poly{2}, Poly{1, 0, 1}) - Complex(4.0)) < 1e-14);
}

TEST_CASE("parametric resultant of x - t and s - t") {
  BiPoly g = BiPoly::zeros(1, 1), b = BiPoly::zeros(1, 1);
  g.at(0, 1) = 1.0;
  g.at(1, 0) = -1.0;
  b.at(0, 1) = 1.0;
  b.at(1, 0) = -1.0;
  BiPoly expected = BiPoly::zeros(1, 1);  // (s, x)
  expected.at(1, 0) = 1.0;
  expected.at(0, 1) = -1.0;
  CHECK(normalized_distance(parametric_resultant_t(g, b, 1, 1), expected) < 1e-12);
}

TEST_CASE("parametric resultant agrees with the exact Sylvester oracle") {
  Gen gen(44);
  for (int rep = 0; rep < 40; ++rep) {
    const auto inst = random_instance(gen);
    if (inst.expected.is_zero()) continue;
    ResultantPlan plan;
    const BiPoly got = parametric_resultant_t(inst.g, inst.b, inst.deg_x, inst.deg_s, &plan);
    CHECK(relative_gap(got, inst.expected.to_bipoly()) <= 1e-8);
    CHECK(plan.fit_residual <= kInterpolationTol);
    CHECK(plan.first_nodes.size() * plan.second_nodes.size() >=
          static_cast<std::size_t>((inst.deg_x + 1) * (inst.deg_s + 1)));
  }
}

TEST_CASE("parametric resultant specializes to resultant_uni at any point") {
  Gen gen(45);
  for (int rep = 0; rep < 20; ++rep) {
    const auto inst = random_instance(gen);
    const BiPoly l = parametric_resultant_t(inst.g, inst.b, inst.deg_x, inst.deg_s);
    const double s = gen.real(-1.5, 1.5), x = gen.real(-1.5, 1.5);
    std::vector<Complex> gc(inst.g.rows()), bc(inst.b.rows());
    for (std::size_t i = 0; i < gc.size(); ++i) gc[i] = inst.g.coeff_u(static_cast<int>(i))(x);
    for (std::size_t i = 0; i < bc.size(); ++i) bc[i] = inst.b.coeff_u(static_cast<int>(i))(s);
    const Complex direct = det(sylvester_matrix(gc, bc));
    const Complex interp = l(s, x);
    CHECK(std::abs(interp - direct) <= 1e-8 * std::max(1.0, l.norm_inf()));
  }
}

TEST_CASE("too small a degree bound raises degree_mismatch") {
  BiPoly g = BiPoly::zeros(2, 1), b = BiPoly::zeros(1, 1);
  g.at(2, 0) = 1.0;
  g.at(0, 1) = -1.0;  // t^2 - x
  b.at(1, 0) = 1.0;
  b.at(0, 1) = -1.0;  // t - s
  try {
    parametric_resultant_t(g, b, 1, 1);
    FAIL("expected degree_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degree_mismatch);
  }
}

TEST_CASE("implicitize the parabola and the cusp") {
  const PlaneParametrization parabola{RationalFunction::identity(), RationalFunction(Poly{0, 0, 1}, Poly{1})};
  BiPoly x2_minus_x1sq = BiPoly::zeros(2, 1);
  x2_minus_x1sq.at(0, 1) = 1.0;
  x2_minus_x1sq.at(2, 0) = -1.0;
  CHECK(normalized_distance(implicitize(parabola), x2_minus_x1sq) < 1e-10);

  const PlaneParametrization cusp{RationalFunction(Poly{0, 0, 1}, Poly{1}), RationalFunction(Poly{0, 0, 0, 1}, Poly{1})};
  BiPoly cusp_eq = BiPoly::zeros(3, 2);
  cusp_eq.at(0, 2) = 1.0;
  cusp_eq.at(3, 0) = -1.0;
  CHECK(normalized_distance(implicitize(cusp), cusp_eq) < 1e-10);
}

TEST_CASE("implicitization of the exact degree-6 input vanishes on the printed proper curve") {
  const PlaneParametrization p = cli::parse_input(CURVEREP_FIXTURES "/section2_exact.json", 0.0);
  const BiPoly f = implicitize(p);
  const PlaneParametrization q{RationalFunction(Poly{-1, 3, -1}, Poly{-3, 1}), RationalFunction(Poly{-1, 1, 1}, Poly{1})};
  for (int i = 0; i < 20; ++i) {
    const double t = -2.0 + 0.19 * i;
    const auto [x1, x2] = q(t);
    CHECK(relative_value(f, x1, x2) <= 1e-6);
  }
}

TEST_CASE("implicitization vanishes on the curve") {
  Gen gen(46);
  for (int rep = 0; rep < 10; ++rep) {
    const PlaneParametrization p{ex::RatFunc(gen.ratfunc(gen.integer(1, 3))).to_numeric(),
                                 ex::RatFunc(gen.ratfunc(gen.integer(1, 3))).to_numeric()};
    const BiPoly f = implicitize(p);
    for (int i = 0; i < 50; ++i) {
      const double t = gen.real(-1.5, 1.5);
      if (std::abs(p.x.den()(t)) < 1e-2 || std::abs(p.y.den()(t)) < 1e-2) continue;
      // Clear denominators: f has degree deg_x1 in x1 and deg_x2 in x2.
      const Complex dx = p.x.den()(t), dy = p.y.den()(t);
      Complex acc = 0.0;
      double scale = 0.0;
      for (int a = 0; a <= f.deg_u(); ++a)
        for (int b = 0; b <= f.deg_v(); ++b) {
          const Complex term = f.coeff(a, b) * std::pow(p.x.num()(t), a) * std::pow(dx, f.deg_u() - a) *
                               std::pow(p.y.num()(t), b) * std::pow(dy, f.deg_v() - b);
          acc += term;
          scale = std::max(scale, std::abs(term));
        }
      CHECK(std::abs(acc) <= 1e-7 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("leading_form") {
  BiPoly parabola = BiPoly::zeros(2, 1);
  parabola.at(0, 1) = 1.0;
  parabola.at(2, 0) = -1.0;
  const BiPoly lf = leading_form(parabola);
  CHECK(lf.coeff(2, 0) == Complex(-1.0));
  CHECK(lf.coeff(0, 1) == Complex(0.0));

  BiPoly circle = BiPoly::zeros(2, 2);
  circle.at(2, 0) = 1.0;
  circle.at(0, 2) = 1.0;
  circle.at(0, 0) = -1.0;
  const BiPoly lc = leading_form(circle);
  CHECK(lc.coeff(2, 0) == Complex(1.0));
  CHECK(lc.coeff(0, 2) == Complex(1.0));
  CHECK(lc.coeff(0, 0) == Complex(0.0));
}

TEST_CASE("leading forms of P and of Qtilde agree on the quartic example") {
  const PlaneParametrization p = cli::parse_input(CURVEREP_FIXTURES "/example1.json", 0.0);
  const ReparamReport rep = reparametrize(p, 0.01);
  const BiPoly a = leading_form(implicitize(p)), b = leading_form_at_infinity(rep.Qtilde);
  CHECK(normalized_distance(a, b) <= 1e-4);
}

TEST_CASE("leading form at infinity matches the implicit leading form") {
  const PlaneParametrization p = cli::parse_input(CURVEREP_FIXTURES "/example1.json", 0.0);
  CHECK(normalized_distance(leading_form(implicitize(p)), leading_form_at_infinity(p)) <= 1e-10);
  const PlaneParametrization split{RationalFunction(Poly{0, 1}, Poly{1, 0, 1}),
                                   RationalFunction(Poly{1}, Poly{2, 0, 1})};
  CHECK_THROWS_AS(leading_form_at_infinity(split), Error);
  const PlaneParametrization poly{RationalFunction(Poly{0, 1}, Poly{1}), RationalFunction(Poly{0, 0, 1}, Poly{1})};
  CHECK_THROWS_AS(leading_form_at_infinity(poly), Error);
}

TEST_CASE("L1 of the quartic example matches the printed expansion") {
  const PlaneParametrization p = cli::parse_input(CURVEREP_FIXTURES "/example1.json", 0.0);
  // R = C0 / C2 from the printed S.
  const RationalFunction r(Poly{0, 83, 52160}, Poly{-52077});
  const LPair l = compute_L(p, r);
  // Printed L1 carries x1^2 s^4 = .5 and x1 s^4 = -1; compare after the
  // same scaling.
  const Complex scale = 0.5 / l.L1.coeff(4, 2);
  CHECK(std::abs(l.L1.coeff(4, 1) * scale - Complex(-1.0)) <= 1e-6);
}
