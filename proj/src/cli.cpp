#include "curverep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "curverep/approxgcd.hpp"
#include "curverep/error.hpp"

namespace curverep::cli {

using nlohmann::json;

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::parse, what, "input"); }

json load_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_real(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw parse_error(where + ": bad number \"" + s + "\"");
    return d;
  }
  throw parse_error(where + ": expected a number or a decimal string");
}

Complex parse_coeff(const json& v, const std::string& where) {
  if (v.is_array()) {
    if (v.size() != 2) throw parse_error(where + ": complex coefficients are [re, im] pairs");
    return {parse_real(v[0], where), parse_real(v[1], where)};
  }
  return parse_real(v, where);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw parse_error(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

const json& coeff_list(const json& comp, const char* key, const std::string& where) {
  const json& list = field(comp, key, where);
  if (!list.is_array() || list.empty()) throw parse_error(where + "." + key + ": expected a nonempty coefficient list");
  return list;
}

RationalFunction parse_component(const json& root, const char* name) {
  const json& comp = field(root, name, "input");
  const std::string where = name;
  std::vector<Complex> num, den;
  for (const json& c : coeff_list(comp, "num", where)) num.push_back(parse_coeff(c, where + ".num"));
  for (const json& c : coeff_list(comp, "den", where)) den.push_back(parse_coeff(c, where + ".den"));
  const Poly d(den);
  if (d.is_zero()) throw parse_error(where + ": zero denominator");
  return RationalFunction(Poly(num), d);
}

// Shortest round-trip text of a JSON number, so that 0.1 becomes exactly 1/10.
exact::Rational parse_rational(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return exact::parse_decimal(v.get<std::string>());
    } catch (const std::exception&) {
      throw parse_error(where + ": bad number \"" + v.get<std::string>() + "\"");
    }
  }
  if (v.is_number()) return exact::parse_decimal(v.dump());
  if (v.is_array()) throw parse_error(where + ": exact mode takes rational coefficients only");
  throw parse_error(where + ": expected a number or a decimal string");
}

exact::RatFunc parse_component_exact(const json& root, const char* name) {
  const json& comp = field(root, name, "input");
  const std::string where = name;
  std::vector<exact::Rational> num, den;
  for (const json& c : coeff_list(comp, "num", where)) num.push_back(parse_rational(c, where + ".num"));
  for (const json& c : coeff_list(comp, "den", where)) den.push_back(parse_rational(c, where + ".den"));
  exact::RatFunc f{exact::RatPoly(num), exact::RatPoly(den)};
  if (f.den.is_zero()) throw parse_error(where + ": zero denominator");
  return f;
}

json coeff_json(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return json::array({c.real(), c.imag()});
}

json rational_json(const exact::Rational& q) { return q.get_str(); }

json ratpoly_json(const exact::RatPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(rational_json(c));
  if (a.empty()) a.push_back("0");
  return a;
}

json ratfunc_json(const exact::RatFunc& f) { return {{"num", ratpoly_json(f.num)}, {"den", ratpoly_json(f.den)}}; }

json exact_bipoly_json(const exact::ExactBiPoly& b) {
  json rows = json::array();
  for (int i = 0; i <= b.deg_u(); ++i) rows.push_back(ratpoly_json(b.coeff_u(i)));
  return rows;
}

json error_json(const Error& e) {
  return {{"status", "error"}, {"code", to_string(e.code())}, {"stage", e.stage()}, {"message", e.what()}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path, "output");
  out << text;
}

struct Sample {
  double t;
  Complex px, py, qx, qy;
};

std::vector<Sample> sample(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                           double d1, double d2, int n) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    const double t = i == n - 1 ? d2 : d1 + i * (d2 - d1) / (n - 1);
    const Complex rt = r(t);
    out.push_back({t, p.x(t), p.y(t), q.x(rt), q.y(rt)});
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

PlaneParametrization parse_input_text(const std::string& text) {
  const json root = load_json(text);
  return {parse_component(root, "x"), parse_component(root, "y")};
}

exact::ExactParametrization parse_input_text_exact(const std::string& text) {
  const json root = load_json(text);
  return {parse_component_exact(root, "x"), parse_component_exact(root, "y")};
}

void check_reduced(const PlaneParametrization& p, double eps) {
  for (int k = 0; k < 2; ++k) {
    const RationalFunction& c = p.component(k);
    if (c.num().is_zero() || c.num().degree() == 0 || c.den().degree() == 0) continue;
    const int g = egcd_uni(c.num(), c.den(), eps).degree();
    if (g > 0)
      throw parse_error("component " + std::string(k == 0 ? "x" : "y") + " is not reduced at eps: egcd degree " +
                        std::to_string(g));
  }
}

PlaneParametrization parse_input(const std::string& path, double eps) {
  PlaneParametrization p = parse_input_text(read_file(path));
  if (eps > 0.0) check_reduced(p, eps);
  return p;
}

exact::ExactParametrization parse_input_exact(const std::string& path) {
  return parse_input_text_exact(read_file(path));
}

json to_json(const Poly& p) {
  json a = json::array();
  for (const Complex& c : p.coeffs()) a.push_back(coeff_json(c));
  if (a.empty()) a.push_back(0.0);
  return a;
}

json to_json(const RationalFunction& r) { return {{"num", to_json(r.num())}, {"den", to_json(r.den())}}; }

json to_json(const PlaneParametrization& p) { return {{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

json to_json(const BiPoly& b) {
  json rows = json::array();
  for (int i = 0; i <= b.deg_u(); ++i) rows.push_back(to_json(b.coeff_u(i)));
  return rows;
}

json to_json(const ReparamReport& rep) {
  json j;
  j["status"] = "ok";
  j["eps"] = rep.eps;
  j["ell"] = rep.ell;
  j["S"] = to_json(rep.S);
  j["R"] = to_json(rep.R);
  j["pair"] = {rep.pair_choice.first, rep.pair_choice.second};
  j["pair_residual"] = rep.pair_residual;
  j["index_fit_residual"] = rep.index_fit_residual;
  json pts = json::array();
  for (const Complex& s : rep.sample_points) pts.push_back(coeff_json(s));
  j["sample_points"] = pts;
  j["sample_degrees"] = rep.sample_degrees;
  j["Qtilde"] = to_json(rep.Qtilde);
  j["Q"] = to_json(rep.Q);
  j["eps_bar"] = rep.eps_bar;
  j["certificate_ratio"] = {rep.cert_ratio[0], rep.cert_ratio[1]};
  j["extraction_gap"] = rep.extraction_gap;
  j["resultant_fit"] = rep.resultant_fit;
  j["message"] = rep.message;
  return j;
}

json to_json(const ErrorBoundReport& eb) {
  return {{"interval", {eb.interval.d1, eb.interval.d2}},
          {"d", eb.d},
          {"M", eb.M},
          {"C", eb.C},
          {"norm_p", eb.norm_p},
          {"norm_q", eb.norm_q},
          {"eps_used", eb.eps_used},
          {"point_bound", eb.point_bound},
          {"offset_bound", eb.offset_bound},
          {"empirical_max", eb.empirical_max}};
}

json to_json(const exact::ExactReparam& rep) {
  json j;
  j["status"] = "ok";
  j["mode"] = "exact";
  j["ell"] = rep.ell;
  j["S"] = exact_bipoly_json(rep.S);
  j["R"] = ratfunc_json(rep.R);
  j["pair"] = {rep.pair.first, rep.pair.second};
  j["Q"] = {{"x", ratfunc_json(rep.Q.x)}, {"y", ratfunc_json(rep.Q.y)}};
  j["message"] = rep.ell == 1 ? "P is proper; Q = P, R = t" : "Q is a proper reparametrization of P";
  return j;
}

std::string samples_csv(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                        double d1, double d2, int n) {
  std::ostringstream out;
  out << "t,px,py,qx,qy\r\n";
  for (const Sample& s : sample(p, q, r, d1, d2, n))
    out << fmt(s.t) << ',' << fmt(s.px.real()) << ',' << fmt(s.py.real()) << ',' << fmt(s.qx.real()) << ','
        << fmt(s.qy.real()) << "\r\n";
  return out.str();
}

std::string samples_svg(const PlaneParametrization& p, const PlaneParametrization& q, const RationalFunction& r,
                        double d1, double d2, int n) {
  const std::vector<Sample> pts = sample(p, q, r, d1, d2, n);
  // Points far outside the bulk of the samples (near poles) are not drawn.
  std::vector<double> mags;
  for (const Sample& s : pts) mags.push_back(std::max(std::abs(s.px), std::abs(s.py)));
  std::vector<double> sorted = mags;
  std::sort(sorted.begin(), sorted.end());
  const double cap = 10.0 * std::max(1.0, sorted[sorted.size() * 9 / 10]);
  auto ok = [&](Complex x, Complex y) {
    return std::isfinite(x.real()) && std::isfinite(y.real()) && std::abs(x) <= cap && std::abs(y) <= cap;
  };
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const Sample& s : pts)
    for (const auto& [x, y] : {std::pair{s.px, s.py}, std::pair{s.qx, s.qy}})
      if (ok(x, y)) {
        xmin = std::min(xmin, x.real());
        xmax = std::max(xmax, x.real());
        ymin = std::min(ymin, y.real());
        ymax = std::max(ymax, y.real());
      }
  if (!std::isfinite(xmin)) xmin = ymin = -1.0, xmax = ymax = 1.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double size = 480.0, pad = 16.0, scale = size / span;
  auto px = [&](double x) { return pad + (x - xmin) * scale; };
  auto py = [&](double y) { return pad + (ymax - y) * scale; };

  std::ostringstream out;
  const double w = 2 * pad + (xmax - xmin) * scale, h = 2 * pad + (ymax - ymin) * scale;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto polylines = [&](bool second, const char* style) {
    std::ostringstream cur;
    int count = 0;
    auto flush = [&] {
      if (count > 1) out << "<polyline fill=\"none\" " << style << " points=\"" << cur.str() << "\"/>\n";
      cur.str("");
      count = 0;
    };
    for (const Sample& s : pts) {
      const Complex x = second ? s.qx : s.px, y = second ? s.qy : s.py;
      if (!ok(x, y)) {
        flush();
        continue;
      }
      cur << (count ? " " : "") << fmt(px(x.real())) << ',' << fmt(py(y.real()));
      ++count;
    }
    flush();
  };
  polylines(false, "stroke=\"black\" stroke-width=\"1.5\"");
  polylines(true, "stroke=\"red\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
  out << "</svg>\n";
  return out.str();
}

int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  json report;
  int status = 0;
  try {
    if (!(cfg.eps > 0.0)) throw Error(ErrorCode::invalid_argument, "eps must be positive", "input");
    if (cfg.interval && !(cfg.interval->first < cfg.interval->second))
      throw Error(ErrorCode::invalid_argument, "interval requires d1 < d2", "input");
    PlaneParametrization p, q;
    RationalFunction r;
    double eps_used = cfg.eps;
    if (cfg.mode == Mode::exact) {
      const exact::ExactParametrization ep = parse_input_exact(cfg.input);
      const exact::ExactReparam rep = [&] {
        try {
          return exact::exact_reparametrize(ep);
        } catch (const Error& e) {
          throw e.stage().empty() ? e.with_stage("exact") : e;
        }
      }();
      report = to_json(rep);
      p = ep.to_numeric();
      q = rep.Q.to_numeric();
      r = rep.R.to_numeric();
    } else {
      p = parse_input(cfg.input, cfg.check_reduced ? cfg.eps : 0.0);
      const ReparamReport rep = reparametrize(p, cfg.eps, {cfg.n_samples, cfg.seed});
      report = to_json(rep);
      report["mode"] = "numeric";
      q = rep.Q;
      r = rep.R;
      eps_used = rep.eps_bar;
    }
    report["seed"] = cfg.seed;
    report["n_samples"] = cfg.n_samples;
    if (cfg.interval) {
      const IntervalSpec iv{cfg.interval->first, cfg.interval->second};
      try {
        report["error_bound"] = to_json(error_bound(p, q, r, iv, eps_used));
      } catch (const Error& e) {
        json sub = json::array();
        for (const IntervalSpec& s : split_at_poles(p, q, r, iv)) sub.push_back({s.d1, s.d2});
        report["error_bound"] = error_json(e.with_stage("errorbound"));
        report["error_bound"]["pole_free_subintervals"] = sub;
        status = exit_code(e.code());
      }
      constexpr int kPlotSamples = 600;
      if (!cfg.plot.empty()) write_text(cfg.plot, samples_svg(p, q, r, iv.d1, iv.d2, kPlotSamples));
      if (!cfg.csv.empty()) write_text(cfg.csv, samples_csv(p, q, r, iv.d1, iv.d2, kPlotSamples));
    }
  } catch (const Error& e) {
    report = error_json(e);
    report["eps"] = cfg.eps;
    report["seed"] = cfg.seed;
    status = exit_code(e.code());
    err << "error [" << (e.stage().empty() ? "-" : e.stage()) << "] " << e.what() << '\n';
  }
  const std::string text = report.dump(2) + "\n";
  if (cfg.report.empty()) {
    out << text;
  } else {
    try {
      write_text(cfg.report, text);
    } catch (const Error& e) {
      err << "error " << e.what() << '\n';
      return 1;
    }
  }
  return status;
}

}  // namespace curverep::cli
