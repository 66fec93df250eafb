#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hlab/error.hpp"
#include "hlab/family.hpp"
#include "hlab/harness.hpp"
#include "hlab/profile_io.hpp"
#include "hlab/radial.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  hlab::require(static_cast<bool>(f), hlab::Errc::io_error, fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hessian-lab: radial k-Hessian verification suites"};
  std::optional<int> n, k;
  std::optional<double> radius, lambda, beta, p, tol, rmin;
  std::optional<std::size_t> grid_n;
  std::optional<std::string> family, suite, out, format, fixture;
  std::string config_path, save_path, load_path;
  bool timing = false;
  app.add_option("--n", n, "space dimension");
  app.add_option("--k", k, "Hessian order");
  app.add_option("--radius", radius, "ball radius R");
  app.add_option("--grid-n", grid_n, "radial grid nodes");
  app.add_option("--rmin-factor", rmin, "innermost node as a fraction of R");
  app.add_option("--lambda", lambda, "exponential-integral lambda");
  app.add_option("--beta", beta, "exponential-integral beta");
  app.add_option("--p", p, "integrability exponent");
  app.add_option("--family", family, "log | power | quadratic | mollified-log | newtonian");
  app.add_option("--suite", suite, "sym | solve | capacity | bm | abp | degiorgi | liouville | all");
  app.add_option("--out", out, "report path (stdout when omitted)");
  app.add_option("--format", format, "csv | jsonl");
  app.add_option("--tol", tol, "relative tolerance override for equality checks");
  app.add_option("--fixture", fixture, "extra fixture (constant-phi)");
  app.add_option("--config", config_path, "JSON config file; flags override it");
  app.add_option("--save-profile", save_path, "write the configured family profile and exit");
  app.add_option("--load-profile", load_path, "read a profile file, print a summary and exit");
  app.add_flag("--timing", timing, "record per-check runtime in the ms column");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  hlab::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = hlab::config_from_json(read_file(config_path), cfg);
    if (n) cfg.n = *n;
    if (k) cfg.k = *k;
    if (radius) cfg.R = *radius;
    if (grid_n) cfg.grid.nodes = *grid_n;
    if (rmin) cfg.grid.rmin_factor = *rmin;
    if (lambda) cfg.lambda = *lambda;
    if (beta) cfg.beta = *beta;
    if (p) cfg.p = *p;
    if (family) cfg.family = *family;
    if (suite) cfg.suite = hlab::parse_suite(*suite);
    if (out) cfg.out = *out;
    if (format) cfg.format = hlab::parse_format(*format);
    if (tol) cfg.tolerance = *tol;
    if (fixture) cfg.fixture = *fixture;
    if (timing) cfg.timing = true;

    if (!load_path.empty()) {
      const auto u = hlab::load_profile(load_path);
      std::cout << fmt::format("n={} k={} R={:.17g} nodes={} boundary={:.17g} atom={:.17g} mass={:.17g}\n",
                               u.dim().n(), u.dim().k(), u.radius(), u.nodes().size(), u.boundary(), u.atom(),
                               hlab::hessian_mass(u));
      return 0;
    }
    if (!save_path.empty()) {
      hlab::validate_config(cfg);
      hlab::FamilySpec spec;
      spec.kind = hlab::parse_family_kind(cfg.family);
      if (spec.kind == hlab::FamilyKind::mollified_log) spec.eps = 0.1 * cfg.R;
      hlab::save_profile(hlab::make_profile(hlab::HessianDim(cfg.n, cfg.k), cfg.R, spec, cfg.grid), save_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "hessian-lab: " << e.what() << "\n";
    return 2;
  }

  const auto res = hlab::run_suite(cfg);
  if (res.exit_code == 2) {
    std::cerr << "hessian-lab: " << res.error << "\n";
    return 2;
  }
  try {
    hlab::emit_report(res.rows, cfg.format, cfg.out);
  } catch (const std::exception& e) {
    std::cerr << "hessian-lab: " << e.what() << "\n";
    return 2;
  }
  for (const auto& r : res.rows)
    if (!r.pass) std::cerr << fmt::format("FAIL {}/{} [{}] {}\n", r.suite, r.check, r.anchor, r.inputs);
  return res.exit_code;
}
