#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "curverep/numpoly.hpp"

namespace curverep {

// Result of an approximate gcd computation together with the residuals that
// witness it: u f + v g ~ d, f ~ d f1, g ~ d g1.
struct EgcdCertificate {
  Poly d, u, v, f1, g1;
  double r_bezout = 0.0;  // ||u f + v g - d||_2
  double r_f = 0.0;       // ||f - d f1||_2
  double r_g = 0.0;       // ||g - d g1||_2
  double norm_fguvd = 0.0;  // max of the 2-norms of f, g, u, v, d
  double norm_f = 0.0;
  double norm_g = 0.0;
  double eps = 0.0;
  bool accepted = false;

  int degree() const { return d.degree(); }
  // Re-checks the three residual inequalities on the stored values.
  bool satisfies(double tol) const;
};

// Approximate gcd of f and g at relative tolerance eps. The returned d is
// monic and of the largest degree whose certificate is accepted.
EgcdCertificate egcd_uni(const Poly& f, const Poly& g, double eps);

// The degree-k candidate with its certificate, accepted or not; empty when
// k is out of range or the subresultant null vector gives no candidate.
std::optional<EgcdCertificate> egcd_at_degree(const Poly& f, const Poly& g, int k, double eps);

struct DegreeResidual {
  int degree;
  double residual;
};

// Smallest singular value of the normalized Sylvester subresultant matrix
// for each candidate gcd degree k = 1..min(deg f, deg g).
std::vector<DegreeResidual> gcd_degree_profile(const Poly& f, const Poly& g);

// Removes approximate common factors of numerator and denominator.
RationalFunction reduce(const RationalFunction& r, double eps);

struct BivariateGcdResult {
  BiPoly S;  // indexed (t, s), ||S||_inf = 1
  int ell = 0;
  std::vector<Complex> sample_points;
  std::vector<int> sample_degrees;  // egcd degree at each sample
  double fit_residual = 0.0;
  int agreeing_samples = 0;   // samples whose degree is ell
  int ambiguous_samples = 0;  // of those, the ones within eps of degree ell + 1
  bool ambiguous() const { return ambiguous_samples > 0.4 * agreeing_samples; }
  double factor_residual = 0.0;  // ||H_k - S A_k|| / ||H_k|| after refinement
  double next_gap = 1.0;         // smallest degree ell + 1 subresultant sigma over the samples
  // First-order size of the error in S: the factorization residual over the
  // distance to a degree ell + 1 common factor.
  double s_uncertainty() const { return next_gap > 0.0 ? factor_residual / next_gap : 1.0; }
};

// Estimates the approximate improper index and recovers S(t, s) from
// specializations s = s_k. n_samples = 0 picks 3 * (ell + 1)^2.
BivariateGcdResult approx_improper_index(const PlaneParametrization& p, double eps,
                                         int n_samples = 0, std::uint64_t seed = 1);

}  // namespace curverep
