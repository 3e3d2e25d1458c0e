#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "curverep/errorbound.hpp"
#include "curverep/exact.hpp"
#include "curverep/numpoly.hpp"
#include "curverep/reparam.hpp"

namespace curverep::cli {

enum class Mode { numeric, exact };

struct JobConfig {
  std::string input;
  double eps = 1e-3;
  std::optional<std::pair<double, double>> interval;
  std::uint64_t seed = 1;
  int n_samples = 0;
  std::string report;  // empty: print the report on stdout
  std::string plot;
  std::string csv;
  Mode mode = Mode::numeric;
  bool check_reduced = true;
};

// Input format: {"x": {"num": [c0, c1, ...], "den": [...]}, "y": {...}},
// coefficients ascending, each a number, a decimal string or [re, im].
// Throws Error(parse) on malformed input or a zero denominator.
PlaneParametrization parse_input_text(const std::string& text);
exact::ExactParametrization parse_input_text_exact(const std::string& text);

// Reads the file and, when eps > 0, rejects components whose numerator and
// denominator have a nontrivial egcd at eps.
PlaneParametrization parse_input(const std::string& path, double eps);
exact::ExactParametrization parse_input_exact(const std::string& path);

// Throws Error(parse) naming the component and the egcd degree.
void check_reduced(const PlaneParametrization& p, double eps);

nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const RationalFunction& r);
nlohmann::json to_json(const PlaneParametrization& p);
nlohmann::json to_json(const BiPoly& b);  // list of rows, b[i] = coefficients of u^i
nlohmann::json to_json(const ReparamReport& rep);
nlohmann::json to_json(const ErrorBoundReport& eb);
nlohmann::json to_json(const exact::ExactReparam& rep);

// Sampled P(t) and Q(R(t)) on [d1, d2] as CSV (t,px,py,qx,qy) and SVG.
std::string samples_csv(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                        double d1, double d2, int n);
std::string samples_svg(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                        double d1, double d2, int n);

// Runs one job and writes the report; returns the process exit status.
int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace curverep::cli
