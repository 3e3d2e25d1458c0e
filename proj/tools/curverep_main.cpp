#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "curverep/cli.hpp"

int main(int argc, char** argv) {
  using curverep::cli::JobConfig;
  JobConfig cfg;
  std::string interval;
  bool exact = false, no_check = false;

  CLI::App app{"Approximate proper reparametrization of rational plane curves"};
  app.add_option("input", cfg.input, "curve description (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--eps", cfg.eps, "tolerance")->check(CLI::PositiveNumber);
  auto* iv = app.add_option("--interval", interval, "parameter interval d1:d2 for the error bound and plots");
  app.add_option("--seed", cfg.seed, "seed for the specialization points");
  app.add_option("--samples", cfg.n_samples, "number of specializations (default 3 (ell+1)^2)");
  app.add_flag("--exact", exact, "exact rational algorithm instead of the numeric one");
  app.add_flag("--no-reduced-check", no_check, "skip the egcd check of each input component");
  app.add_option("--report", cfg.report, "write the JSON report here instead of stdout");
  app.add_option("--plot", cfg.plot, "SVG plot of P and Q(R) over the interval")->needs(iv);
  app.add_option("--csv", cfg.csv, "CSV samples of P and Q(R) over the interval")->needs(iv);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!interval.empty()) {
    const auto colon = interval.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      std::size_t used = 0;
      const std::string a = interval.substr(0, colon), b = interval.substr(colon + 1);
      const double d1 = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument("trailing text");
      const double d2 = std::stod(b, &used);
      if (used != b.size()) throw std::invalid_argument("trailing text");
      cfg.interval = {{d1, d2}};
    } catch (const std::exception&) {
      std::cerr << "--interval expects d1:d2, got \"" << interval << "\"\n";
      return 2;
    }
  }
  cfg.mode = exact ? curverep::cli::Mode::exact : curverep::cli::Mode::numeric;
  cfg.check_reduced = !no_check;
  return curverep::cli::run_job(cfg, std::cout, std::cerr);
}
