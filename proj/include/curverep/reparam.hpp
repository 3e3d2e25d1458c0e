#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "curverep/approxgcd.hpp"
#include "curverep/numpoly.hpp"
#include "curverep/resultants.hpp"

namespace curverep {

struct RChoice {
  RationalFunction R;
  int i = -1, j = -1;     // R = C_i / C_j
  double residual = 0.0;  // distance between S and num(R(t) - R(s)), both normalized
};

// Chooses R = C_i / C_j from the s-coefficients of S(t, s).
RChoice build_R(const BiPoly& S, double eps);

struct LPair {
  BiPoly L1, L2;  // indexed (s, x_k); coefficient of x^ell has unit infinity norm
  ResultantPlan plan1, plan2;
};

LPair compute_L(const PlaneParametrization& p, const RationalFunction& r);

// q~_k = (-coeff(L_k, x^(ell-1)) / ell) / coeff(L_k, x^ell).
PlaneParametrization extract_Qtilde(const BiPoly& l1, const BiPoly& l2, int ell);

// Same curve through the root of the (ell-1)-th x-derivative of L_k.
PlaneParametrization extract_Qtilde_derivative(const BiPoly& l1, const BiPoly& l2, int ell);

// Removes approximate common factors component-wise; monic denominators.
// A nonnegative target[k] fixes the degree of component k: the common
// factor removed is the one of degree deg(qt_k) - target[k].
PlaneParametrization simplify_Q(const PlaneParametrization& qt, double eps, std::array<int, 2> target = {-1, -1});

struct Certificate {
  double eps_bar = 0.0;
  bool holds = false;            // the residual test passed at the requested eps
  std::array<double, 2> ratio{};  // ||num(E_k(R, p_k))|| / ||H^PQ_k||^ell
  std::array<double, 2> h_norm{};
};

Certificate certify(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                    const BiPoly& l1, const BiPoly& l2, double eps);

struct ReparamOptions {
  int n_samples = 0;
  std::uint64_t seed = 1;
};

struct ReparamReport {
  double eps = 0.0;
  int ell = 1;
  BiPoly S;
  RationalFunction R;
  PlaneParametrization Qtilde;
  PlaneParametrization Q;
  double eps_bar = 0.0;
  std::pair<int, int> pair_choice{-1, -1};
  double pair_residual = 0.0;
  double index_fit_residual = 0.0;
  std::vector<Complex> sample_points;
  std::vector<int> sample_degrees;
  std::array<double, 2> cert_ratio{};
  double extraction_gap = 0.0;  // max coefficient gap between the two Q~ routes
  double resultant_fit = 0.0;
  std::string message;
};

// The full pipeline. Errors carry the stage that raised them.
ReparamReport reparametrize(const PlaneParametrization& p, double eps, const ReparamOptions& opts = {});

}  // namespace curverep
