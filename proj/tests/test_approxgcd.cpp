#include <doctest.h>

#include "curverep/approxgcd.hpp"
#include "curverep/cli.hpp"
#include "curverep/error.hpp"
#include "support.hpp"

using namespace curverep;
using testing::Gen;

namespace {

double monic_distance(const Poly& a, const Poly& b) {
  const Poly d = a.monic() - b.monic();
  return d.norm_inf();
}

const DegreeResidual& at_degree(const std::vector<DegreeResidual>& prof, int k) {
  for (const auto& r : prof)
    if (r.degree == k) return r;
  FAIL("degree missing from the profile");
  return prof.front();
}

}  // namespace

TEST_CASE("egcd of identical inputs") {
  const Poly f = Poly{-1, 1} * Poly{2, 1} * Poly{0.5, 1};
  const auto c = egcd_uni(f, f, 1e-8);
  CHECK(c.accepted);
  CHECK(c.degree() == 3);
  CHECK(monic_distance(c.d, f) < 1e-10);
  CHECK(c.f1.degree() == 0);
  CHECK(c.g1.degree() == 0);
  CHECK(c.r_f < 1e-12);
  CHECK(c.r_g < 1e-12);
}

TEST_CASE("egcd of an exact common linear factor") {
  const Poly f = Poly{-1, 1} * Poly{2, 1}, g = Poly{-1, 1} * Poly{3, 1};
  const auto c = egcd_uni(f, g, 1e-8);
  CHECK(c.degree() == 1);
  CHECK(monic_distance(c.d, Poly{-1, 1}) < 1e-10);
}

TEST_CASE("a perturbation below eps keeps the gcd degree of the exact oracle") {
  namespace ex = curverep::exact;
  const ex::RatPoly ef = ex::RatPoly{-1, 1} * ex::RatPoly{2, 1}, eg = ex::RatPoly{-1, 1} * ex::RatPoly{3, 1};
  const int oracle = ex::exact_gcd(ef, eg).degree();
  const Poly f = ef.to_poly() + Poly{1e-6}, g = eg.to_poly();
  CHECK(egcd_uni(f, g, 1e-4).degree() == oracle);
}

TEST_CASE("egcd rejects two zero inputs") {
  CHECK_THROWS_AS(egcd_uni(Poly{}, Poly{}, 1e-3), Error);
}

TEST_CASE("gcd_degree_profile") {
  const auto coprime = gcd_degree_profile(Poly{0, 1}, Poly{1, 1});
  CHECK(at_degree(coprime, 1).residual >= 0.1);

  const auto square = gcd_degree_profile(Poly{0, 0, 1}, Poly{0, 0, 1});
  CHECK(at_degree(square, 2).residual < 1e-12);

  const Poly f = Poly{-1, 1} * Poly{2, 1}, g = Poly{-1, 1} * Poly{3, 1};
  const auto shared = gcd_degree_profile(f, g);
  CHECK(at_degree(shared, 1).residual < 1e-12);
  CHECK(at_degree(shared, 2).residual > 1e-3);
}

TEST_CASE("coprime residual matches a brute-force minimum over monic linear d") {
  // For f = t, g = t + 1 and d = t + a the best cofactor fit leaves
  // |a| and |a - 1| in the two residuals; the normalized subresultant
  // profile must not report anything near zero.
  double best = INFINITY;
  for (int i = -400; i <= 400; ++i) {
    const double a = i / 100.0;
    best = std::min(best, std::max(std::abs(a), std::abs(a - 1.0)));
  }
  CHECK(best == doctest::Approx(0.5));
  const auto prof = gcd_degree_profile(Poly{0, 1}, Poly{1, 1});
  CHECK(at_degree(prof, 1).residual > 0.1);
}

TEST_CASE("egcd is symmetric in its arguments") {
  Gen g(31);
  for (int rep = 0; rep < 40; ++rep) {
    const Poly c = g.poly(g.integer(0, 2));
    const Poly f = c * g.poly(g.integer(1, 3)), h = c * g.poly(g.integer(1, 3));
    const auto a = egcd_uni(f, h, 1e-8), b = egcd_uni(h, f, 1e-8);
    REQUIRE(a.degree() == b.degree());
    CHECK(monic_distance(a.d, b.d) < 1e-8);
  }
}

TEST_CASE("accepted certificates satisfy the three residual inequalities as stored") {
  Gen g(32);
  for (int rep = 0; rep < 60; ++rep) {
    const Poly c = g.poly(g.integer(0, 3));
    const Poly f = g.perturb(c * g.poly(g.integer(1, 3)), 1e-7);
    const Poly h = g.perturb(c * g.poly(g.integer(1, 3)), 1e-7);
    const double eps = 1e-5;
    const auto cert = egcd_uni(f, h, eps);
    REQUIRE(cert.accepted);
    CHECK(cert.r_bezout < eps * cert.norm_fguvd);
    CHECK(cert.r_f < eps * cert.norm_f);
    CHECK(cert.r_g < eps * cert.norm_g);
    CHECK(cert.satisfies(eps));
    CHECK(cert.degree() >= c.degree());
  }
}

TEST_CASE("index of a proper parametrization is one") {
  const PlaneParametrization p{RationalFunction::identity(), RationalFunction(Poly{0, 0, 1}, Poly{1})};
  const auto res = approx_improper_index(p, 1e-6);
  CHECK(res.ell == 1);
  BiPoly t_minus_s = BiPoly::zeros(1, 1);
  t_minus_s.at(1, 0) = 1.0;
  t_minus_s.at(0, 1) = -1.0;
  CHECK(approx_eq(res.S, t_minus_s, 1e-6));
  CHECK(res.S.norm_inf() == doctest::Approx(1.0));
}

TEST_CASE("index of Q0(t^2) is two with S proportional to t^2 - s^2") {
  namespace ex = curverep::exact;
  const ex::RatFunc q0x{ex::RatPoly{0, 1}, ex::RatPoly{1, 0, 1}}, q0y{ex::RatPoly{0, 0, 1}, ex::RatPoly{1, 0, 1}};
  const ex::RatFunc r0{ex::RatPoly{0, 0, 1}};
  const ex::ExactParametrization p{ex::compose(q0x, r0), ex::compose(q0y, r0)};
  const ex::ExactReparam oracle = ex::exact_reparametrize(p);
  REQUIRE(oracle.ell == 2);

  const auto res = approx_improper_index(p.to_numeric(), 1e-6);
  CHECK(res.ell == 2);
  CHECK(normalized_distance(res.S, oracle.S.to_bipoly()) < 1e-6);
}

TEST_CASE("quartic example recovers index two and the printed S") {
  const PlaneParametrization p = cli::parse_input(CURVEREP_FIXTURES "/example1.json", 0.0);
  const auto res = approx_improper_index(p, 0.01);
  CHECK(res.ell == 2);
  BiPoly printed = BiPoly::zeros(2, 2);
  printed.at(2, 0) = 52160;
  printed.at(1, 0) = 83;
  printed.at(1, 1) = -83;
  printed.at(0, 1) = -83;
  printed.at(0, 2) = -52077;
  CHECK(normalized_distance(res.S, printed) < 0.01);
}

TEST_CASE("index is invariant under a common scaling of the components") {
  Gen g(33);
  for (int rep = 0; rep < 8; ++rep) {
    namespace ex = curverep::exact;
    const ex::RatFunc q0x = g.ratfunc(g.integer(1, 2)), q0y = g.ratfunc(g.integer(1, 2));
    const ex::RatFunc r0 = g.ratfunc(2);
    const PlaneParametrization p = ex::ExactParametrization{ex::compose(q0x, r0), ex::compose(q0y, r0)}.to_numeric();
    const Complex c{g.real(0.5, 4), 0.0};
    const PlaneParametrization scaled{RationalFunction(p.x.num() * c, p.x.den()), RationalFunction(p.y.num() * c, p.y.den())};
    int a = -1, b = -2;
    try {
      a = approx_improper_index(p, 1e-6, 0, 3).ell;
      b = approx_improper_index(scaled, 1e-6, 0, 3).ell;
    } catch (const Error&) {
      continue;
    }
    CHECK(a == b);
    CHECK(a >= 1);
  }
}

TEST_CASE("index law on exact improper inputs against the tracing index") {
  Gen g(34);
  namespace ex = curverep::exact;
  int checked = 0;
  for (int rep = 0; rep < 12; ++rep) {
    const ex::RatFunc q0x = g.ratfunc(g.integer(1, 3)), q0y = g.ratfunc(g.integer(1, 3));
    const ex::RatFunc r0 = g.ratfunc(g.integer(1, 3));
    const ex::ExactParametrization q0{q0x, q0y};
    const ex::ExactParametrization p{ex::compose(q0x, r0), ex::compose(q0y, r0)};
    if (p.x.degree() + p.y.degree() == 0 || p.x.degree() > 9 || p.y.degree() > 9) continue;
    const int expected = r0.degree() * ex::tracing_index(q0);
    REQUIRE(ex::tracing_index(p) == expected);
    try {
      CHECK(approx_improper_index(p.to_numeric(), 1e-7).ell == expected);
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::unstable_index);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("reduce removes a known common factor") {
  const Poly n{1, 2}, d{3, 0, 1}, c = Poly{-1, 1} * Poly{0.5, 1} * Poly{2, 1};
  const RationalFunction r = reduce(RationalFunction(n * c, d * c), 1e-8);
  CHECK(r.num().degree() == 1);
  CHECK(r.den().degree() == 2);
  for (double t : {-1.3, 0.2, 4.0}) CHECK(std::abs(r(t) - n(t) / d(t)) < 1e-8);
}
