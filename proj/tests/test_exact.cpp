#include <doctest.h>

#include <chrono>

#include "curverep/cli.hpp"
#include "curverep/error.hpp"
#include "curverep/reparam.hpp"
#include "support.hpp"

using namespace curverep;
using testing::Gen;
namespace ex = curverep::exact;

namespace {

ex::ExactParametrization section2_input() {
  return cli::parse_input_exact(CURVEREP_FIXTURES "/section2_exact.json");
}

// Same rational function up to a common scalar in numerator and denominator.
bool same_function(const ex::RatFunc& a, const ex::RatFunc& b) {
  return a.num * b.den == b.num * a.den;
}

// gcd of L with its x-derivative, where L is indexed (s, x).
int power_gcd_x_degree(const ex::ExactBiPoly& l) {
  ex::ExactBiPoly dl = ex::ExactBiPoly::zeros(l.deg_u(), std::max(l.deg_v() - 1, 0));
  for (int i = 0; i <= l.deg_u(); ++i)
    for (int j = 1; j <= l.deg_v(); ++j) dl.at(i, j - 1) = l.coeff(i, j) * j;
  dl.trim();
  return ex::bivariate_gcd(l, dl).deg_v();
}

}  // namespace

TEST_CASE("exact_gcd") {
  const ex::RatPoly f = ex::RatPoly{-1, 1} * ex::RatPoly{2, 1};
  CHECK(ex::exact_gcd(f, ex::RatPoly{}) == f.primitive());
  CHECK(ex::exact_gcd(f, ex::RatPoly{-1, 1} * ex::RatPoly{3, 1}) == (ex::RatPoly{-1, 1}));
  CHECK(ex::exact_gcd(ex::RatPoly{}, ex::RatPoly{}).is_zero());
}

TEST_CASE("exact_gcd divides both inputs and the cofactors are coprime") {
  Gen g(61);
  for (int rep = 0; rep < 40; ++rep) {
    const ex::RatPoly c = g.ratpoly(g.integer(0, 3));
    const ex::RatPoly a = c * g.ratpoly(g.integer(0, 3)), b = c * g.ratpoly(g.integer(0, 3));
    const ex::RatPoly d = ex::exact_gcd(a, b);
    CHECK(d.degree() >= c.degree());
    const ex::RatPoly ca = ex::exact_quotient(a, d), cb = ex::exact_quotient(b, d);
    CHECK(ex::exact_gcd(ca, cb).degree() == 0);
  }
}

TEST_CASE("parse_decimal") {
  CHECK(ex::parse_decimal("-1.25e-3") == ex::Rational(-1, 800));
  ex::Rational r("2499375156/10000000000000");
  r.canonicalize();
  CHECK(ex::parse_decimal("0.0002499375156") == r);
  CHECK(ex::parse_decimal("17") == 17);
  CHECK_THROWS_AS(ex::parse_decimal("1.2.3"), Error);
}

TEST_CASE("bivariate gcd of the degree-6 example is the printed S") {
  const ex::ExactParametrization p = section2_input();
  const ex::ExactBiPoly s =
      ex::bivariate_gcd(ex::cross_difference(p.x, p.x), ex::cross_difference(p.y, p.y));
  // S = C0 + C1 s + C2 s^2 + C3 s^3, indexed (t, s).
  ex::ExactBiPoly printed = ex::ExactBiPoly::zeros(3, 3);
  const ex::RatPoly c[4] = {ex::RatPoly{0, -6, -2, 1}, ex::RatPoly{6, 0, 0, 3}, ex::RatPoly{2, 0, 0, 1},
                            ex::RatPoly{-1, -3, -1}};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i <= c[j].degree(); ++i) printed.at(i, j) = c[j][i];
  printed.trim();
  const bool equal = s == printed || s == printed * ex::Rational(-1);
  CHECK(equal);
}

TEST_CASE("tracing_index") {
  const ex::RatFunc t{ex::RatPoly{0, 1}}, t2{ex::RatPoly{0, 0, 1}}, t4{ex::RatPoly{0, 0, 0, 0, 1}};
  CHECK(ex::tracing_index({t, t2}) == 1);
  CHECK(ex::tracing_index({t2, t4}) == 2);
  CHECK(ex::tracing_index(section2_input()) == 3);
  CHECK_THROWS_AS(ex::tracing_index({ex::RatFunc{ex::RatPoly{1}}, ex::RatFunc{ex::RatPoly{2}}}), Error);
}

TEST_CASE("exact reparametrization of the degree-6 example") {
  const auto start = std::chrono::steady_clock::now();
  const ex::ExactReparam rep = ex::exact_reparametrize(section2_input());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 1.0);
  CHECK(rep.ell == 3);
  CHECK(rep.pair == std::pair{3, 2});
  CHECK(same_function(rep.R, ex::RatFunc{ex::RatPoly{-1, -3, -1}, ex::RatPoly{2, 0, 0, 1}}));
  CHECK(same_function(rep.Q.x, ex::RatFunc{ex::RatPoly{-1, 3, -1}, ex::RatPoly{-3, 1}}));
  CHECK(same_function(rep.Q.y, ex::RatFunc{ex::RatPoly{-1, 1, 1}}));
}

TEST_CASE("exact reparametrization of a proper input is the identity") {
  const ex::ExactParametrization p{ex::RatFunc{ex::RatPoly{0, 1}}, ex::RatFunc{ex::RatPoly{0, 0, 1}}};
  const ex::ExactReparam rep = ex::exact_reparametrize(p);
  CHECK(rep.ell == 1);
  CHECK(rep.R == (ex::RatFunc{ex::RatPoly{0, 1}}));
  CHECK(rep.Q.x == p.x);
  CHECK(rep.Q.y == p.y);
}

TEST_CASE("composites with R0 = t^2 recover a quadratic R and the same curve") {
  Gen g(62);
  const ex::RatFunc r0{ex::RatPoly{0, 0, 1}};
  for (int rep = 0; rep < 6; ++rep) {
    const ex::ExactParametrization q0{g.ratfunc(g.integer(1, 3)), g.ratfunc(g.integer(1, 3))};
    if (ex::tracing_index(q0) != 1) continue;
    const ex::ExactParametrization p{ex::compose(q0.x, r0), ex::compose(q0.y, r0)};
    const ex::ExactReparam out = ex::exact_reparametrize(p);
    CHECK(out.R.degree() == 2);
    const ex::ExactBiPoly fp = ex::exact_implicitize(out.Q), fq = ex::exact_implicitize(q0);
    const ex::ExactBiPoly g1 = ex::bivariate_gcd(fp, fq);
    CHECK(g1.deg_u() == fq.deg_u());
    CHECK(g1.deg_v() == fq.deg_v());
  }
}

TEST_CASE("exact invariants on random composites") {
  Gen g(63);
  int runs = 0;
  for (int rep = 0; rep < 10; ++rep) {
    const ex::ExactParametrization q0{g.ratfunc(g.integer(1, 2)), g.ratfunc(g.integer(1, 2))};
    if (ex::tracing_index(q0) != 1) continue;
    const ex::RatFunc r0 = g.ratfunc(g.integer(2, 3));
    const ex::ExactParametrization p{ex::compose(q0.x, r0), ex::compose(q0.y, r0)};
    const ex::ExactReparam out = ex::exact_reparametrize(p);
    ++runs;
    CHECK(ex::compose(out.Q.x, out.R) == p.x.reduced());
    CHECK(ex::compose(out.Q.y, out.R) == p.y.reduced());
    CHECK(ex::tracing_index(out.Q) == 1);
    CHECK(ex::tracing_index(p) == out.R.degree());
    CHECK(power_gcd_x_degree(out.L1) == out.ell - 1);
    CHECK(power_gcd_x_degree(out.L2) == out.ell - 1);
  }
  CHECK(runs > 0);
}

TEST_CASE("numeric pipeline agrees with the exact oracle on rationalized input") {
  Gen g(64);
  const double eps = 1e-6;
  int runs = 0;
  for (int rep = 0; rep < 6; ++rep) {
    const ex::ExactParametrization q0{g.ratfunc(g.integer(1, 2)), g.ratfunc(g.integer(1, 2))};
    if (ex::tracing_index(q0) != 1) continue;
    const ex::RatFunc r0 = g.ratfunc(2);
    const ex::ExactParametrization p{ex::compose(q0.x, r0), ex::compose(q0.y, r0)};
    const ReparamReport num = reparametrize(p.to_numeric(), eps);
    const ex::ExactReparam exa = ex::exact_reparametrize(ex::ExactParametrization::from_numeric(p.to_numeric()));
    const PlaneParametrization qe = exa.Q.to_numeric();
    const RationalFunction re = exa.R.to_numeric();
    for (int i = 0; i <= 40; ++i) {
      const double t = -1.0 + i / 20.0;
      const Complex rn = num.R(t), rx = re(t);
      if (!std::isfinite(std::abs(rn)) || !std::isfinite(std::abs(rx))) continue;
      const auto [a1, a2] = num.Q(rn);
      const auto [b1, b2] = qe(rx);
      if (std::abs(b1) > 1e3 || std::abs(b2) > 1e3) continue;
      CHECK(std::abs(a1 - b1) <= 10 * eps * std::max(1.0, std::abs(b1)));
      CHECK(std::abs(a2 - b2) <= 10 * eps * std::max(1.0, std::abs(b2)));
    }
    ++runs;
  }
  CHECK(runs > 0);
}

TEST_CASE("exact implicitization of the parabola") {
  const ex::ExactParametrization p{ex::RatFunc{ex::RatPoly{0, 1}}, ex::RatFunc{ex::RatPoly{0, 0, 1}}};
  const ex::ExactBiPoly f = ex::exact_implicitize(p);
  CHECK(f.deg_u() == 2);
  CHECK(f.deg_v() == 1);
  CHECK(f.coeff(1, 0) == 0);
  CHECK(f.coeff(2, 0) == -f.coeff(0, 1));
}
