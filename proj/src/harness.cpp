#include "hlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "hlab/abp.hpp"
#include "hlab/bm.hpp"
#include "hlab/capacity.hpp"
#include "hlab/check.hpp"
#include "hlab/core.hpp"
#include "hlab/degiorgi.hpp"
#include "hlab/error.hpp"
#include "hlab/family.hpp"
#include "hlab/fixtures.hpp"
#include "hlab/liouville.hpp"
#include "hlab/oracle.hpp"
#include "hlab/orlicz.hpp"
#include "hlab/parallel.hpp"
#include "hlab/radial.hpp"
#include "json.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Records = std::vector<CheckRecord>;

struct Task {
  Suite suite;
  std::string prefix;
  std::function<Records()> run;
};

std::string tag(const HessianDim& d) { return fmt::format("n{}k{}", d.n(), d.k()); }

double tol(const ExperimentConfig& cfg, double fallback) { return cfg.tolerance.value_or(fallback); }

/// Reference dimensions plus the configured one, without duplicates.
std::vector<HessianDim> dims_with(const ExperimentConfig& cfg, std::vector<HessianDim> reference,
                                  const std::function<bool(const HessianDim&)>& admit) {
  const HessianDim own(cfg.n, cfg.k);
  if (admit(own) && std::find(reference.begin(), reference.end(), own) == reference.end()) reference.push_back(own);
  return reference;
}

FamilySpec family_of(FamilyKind kind, double amplitude = 1.0, double eps = 0.0) {
  FamilySpec spec;
  spec.kind = kind;
  spec.amplitude = amplitude;
  spec.eps = eps;
  return spec;
}

// ---------------------------------------------------------------- sym

void sym_tasks(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  tasks.push_back({Suite::sym, "minor-sum", [&cfg] {
                     Records out;
                     for (std::size_t i = 0; i < fixtures::kMatrixCount; ++i) {
                       const auto M = fixtures::symmetric_matrix(i);
                       const int n = static_cast<int>(M.rows());
                       auto spec = symmetric_spectrum(M);
                       for (double& x : spec) x = std::abs(x);
                       double worst = 0.0;
                       for (int j = 1; j <= n; ++j) {
                         const double a = s_k_of_matrix(M, HessianDim(std::max(n, 2), j));
                         const double b = oracle::principal_minor_sum(M, j);
                         const double scale = std::max(elem_sym(spec, j), 1e-300);
                         worst = std::max(worst, std::abs(a - b) / scale);
                       }
                       out.push_back(make_record(fmt::format("matrix-{:02d}", i), "eigenvalue-vs-principal-minors",
                                                 fmt::format("n={} k=1..{}", n, n), worst, tol(cfg, 1e-9)));
                     }
                     return out;
                   }});
  tasks.push_back({Suite::sym, "gamma", [] {
                     Records out;
                     const auto fx = fixtures::spectrum_fixtures();
                     for (std::size_t i = 0; i < fx.size(); ++i) {
                       const auto& s = fx[i].spectrum;
                       const int n = static_cast<int>(s.size());
                       bool ok = true;
                       bool maclaurin = true;
                       for (int j = 1; j <= n; ++j) {
                         const bool member = gamma_k_membership(s, HessianDim(std::max(n, 2), j));
                         ok = ok && member == (j <= fx[i].max_k);
                         if (j >= 2 && j <= fx[i].max_k) {
                           const double prev = std::pow(elem_sym(s, j - 1) / binomial(n, j - 1), 1.0 / (j - 1));
                           const double cur = std::pow(elem_sym(s, j) / binomial(n, j), 1.0 / j);
                           maclaurin = maclaurin && prev >= cur - 1e-12 * (1.0 + std::abs(prev));
                         }
                       }
                       out.push_back(make_flag(fmt::format("spectrum-{:02d}/cone", i), "admissibility-cone",
                                               fmt::format("n={} max-k={}", n, fx[i].max_k), ok));
                       out.push_back(make_flag(fmt::format("spectrum-{:02d}/maclaurin", i), "admissibility-cone",
                                               fmt::format("n={} max-k={}", n, fx[i].max_k), maclaurin));
                     }
                     return out;
                   }});
  const auto dims = dims_with(cfg, {{2, 1}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {5, 2}, {6, 3}},
                              [](const HessianDim&) { return true; });
  for (const auto& d : dims) {
    tasks.push_back({Suite::sym, "radial-fd/" + tag(d), [d, &cfg] {
                       Records out;
                       std::vector<std::pair<std::string, FamilySpec>> fams{{"quadratic", family_of(FamilyKind::quadratic)}};
                       if (d.intermediate())
                         fams.emplace_back("mollified-log", family_of(FamilyKind::mollified_log, 1.0, 0.1 * cfg.R));
                       if (d.subcritical()) fams.emplace_back("power", family_of(FamilyKind::power));
                       for (const auto& [name, spec] : fams) {
                         const auto u = make_profile(d, cfg.R, spec, cfg.grid);
                         const auto mu = s_k_radial(u);
                         const auto nodes = u.nodes();
                         const std::size_t i = numerics::bracket(nodes, 0.5 * cfg.R);
                         const double r = nodes[i];
                         const double fd = oracle::radial_s_k_fd(u, r, 2e-3 * cfg.R);
                         const double got = mu.density()[i];
                         // Scale: sigma_k of the absolute radial eigenvalues (|u''|, u'/r, ..., u'/r).
                         std::vector<double> eig(d.n(), std::abs(u.slope()[i]) / r);
                         eig[0] = std::abs(numerics::derivative(nodes, u.slope())[i]);
                         const double scale = std::max(elem_sym(eig, d.k()), 1e-300);
                         out.push_back(make_record(name, "radial-hessian-operator",
                                                   fmt::format("r={:.6g} radial={:.10g} full-hessian={:.10g}", r, got, fd),
                                                   std::abs(got - fd) / scale, tol(cfg, 1e-5)));
                       }
                       return out;
                     }});
  }
}

// ---------------------------------------------------------------- solve

void solve_tasks(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto dims = dims_with(cfg, {{2, 1}, {3, 1}, {4, 2}}, [](const HessianDim&) { return true; });
  for (const auto& d : dims) {
    tasks.push_back({Suite::solve, tag(d), [d, &cfg] {
                       Records out;
                       const int n = d.n();
                       const double R = cfg.R;
                       const double c = binomial(n, d.k()) * unit_ball_volume(n);
                       if (d.intermediate()) {
                         const auto z = solve_dirichlet(RadialMeasure::dirac(d, geometric_grid(R, cfg.grid), c), 0.0);
                         double err = 0.0;
                         for (std::size_t i = 0; i < z.nodes().size(); ++i)
                           if (z.nodes()[i] >= 1e-6 * R)
                             err = std::max(err, std::abs(z.values()[i] - std::log(z.nodes()[i] / R)));
                         out.push_back(make_record("fundamental-solution", "fundamental-solution",
                                                   fmt::format("atom={:.17g} R={:.6g}", c, R), err, tol(cfg, 1e-6)));
                         const auto u = make_profile(d, R, family_of(FamilyKind::log), cfg.grid);
                         double dev = 0.0;
                         for (double m : u.cumulative_mass()) dev = std::max(dev, std::abs(m - c) / c);
                         out.push_back(make_record("fundamental-mass", "fundamental-solution",
                                                   fmt::format("expected={:.17g}", c), dev, tol(cfg, 1e-8)));
                       } else if (d.subcritical()) {
                         const auto u = make_profile(d, R, family_of(FamilyKind::power), cfg.grid);
                         const double atom = u.cumulative_mass().back();
                         const auto z = solve_dirichlet(RadialMeasure::dirac(d, geometric_grid(R, cfg.grid), atom), 0.0);
                         double err = 0.0;
                         for (std::size_t i = 0; i < z.nodes().size(); ++i)
                           if (z.nodes()[i] >= 1e-6 * R)
                             err = std::max(err, std::abs(z.values()[i] - u.values()[i]) / (1.0 + std::abs(u.values()[i])));
                         out.push_back(make_record("fundamental-solution", "fundamental-solution",
                                                   fmt::format("atom={:.17g} R={:.6g}", atom, R), err, tol(cfg, 1e-6)));
                       }
                       const auto q = make_profile(d, R, family_of(FamilyKind::quadratic), cfg.grid);
                       const auto back = solve_dirichlet(s_k_radial(q), 0.0);
                       double err = 0.0;
                       for (std::size_t i = 0; i < q.nodes().size(); ++i)
                         err = std::max(err, std::abs(back.values()[i] - q.values()[i]));
                       out.push_back(make_record("quadratic-roundtrip", "dirichlet-problem",
                                                 fmt::format("R={:.6g}", R), err / std::abs(q.origin_value()),
                                                 tol(cfg, 1e-6)));
                       const double exact = binomial(n, d.k()) * unit_ball_volume(n) * std::pow(R, n + 2) / (n + 2);
                       out.push_back(make_equality("quadratic-integral", "hessian-integral",
                                                   fmt::format("exact={:.17g}", exact), hessian_integral(q), exact,
                                                   tol(cfg, 1e-6)));
                       return out;
                     }});
  }
}

// ---------------------------------------------------------------- capacity

Records strict_levelset(const RadialProfile& u, std::span<const double> ts, const std::string& id) {
  const auto ratios = levelset_cap_ratios(u, ts);
  const double worst = *std::max_element(ratios.begin(), ratios.end());
  return {make_record(id, "level-set-capacity-bound", fmt::format("t-count={} strict", ts.size()), worst,
                      1.0 - 1e-9)};
}

void capacity_tasks(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const double R = cfg.R;
  const auto dims = dims_with(cfg, {{2, 1}, {3, 1}, {4, 2}},
                              [](const HessianDim& d) { return d.intermediate() || d.subcritical(); });
  const std::vector<double> fractions{0.5, 0.1, 0.01};
  for (const auto& d : dims) {
    tasks.push_back({Suite::capacity, "isocap/" + tag(d), [d, R, fractions, &cfg] {
                       Records out;
                       std::vector<double> rhos;
                       for (double f : fractions) rhos.push_back(f * R);
                       if (d.intermediate()) {
                         for (double f : fractions)
                           out.push_back(make_equality(fmt::format("saturation/rho={:g}R", f), "isocapacitary",
                                                       fmt::format("beta={:.17g}", beta0(d)),
                                                       isocapacitary_ratio({d, f * R, R}, beta0(d)), 1.0,
                                                       tol(cfg, 1e-8)));
                         rhos.push_back(1e-3 * R);
                         for (auto& r : isocapacitary_sweep(d, R, rhos, 1.0)) {
                           r.id = "beta=1/" + r.id;
                           out.push_back(std::move(r));
                         }
                       } else {
                         rhos.push_back(1e-3 * R);
                         const double qmax = d.n() * (d.k() + 1.0) / (d.n() - 2.0 * d.k());
                         for (double q : {1.0, qmax})
                           for (auto& r : isocapacitary_sweep(d, R, rhos, q)) {
                             r.id = fmt::format("q={:g}/", q) + r.id;
                             out.push_back(std::move(r));
                           }
                       }
                       for (double rho : {R / std::exp(1.0), 0.5 * R}) {
                         const CapacityConfig cc{d, rho, R};
                         out.push_back(make_equality(fmt::format("extremal-mass/rho={:.6g}", rho), "condenser-capacity",
                                                     fmt::format("cap={:.17g}", cap_concentric(cc)),
                                                     hessian_mass(extremal_profile(cc, cfg.grid)), cap_concentric(cc),
                                                     tol(cfg, 1e-6)));
                       }
                       return out;
                     }});
    tasks.push_back({Suite::capacity, "levelset/" + tag(d), [d, R, &cfg] {
                       Records out;
                       if (d.intermediate()) {
                         const std::vector<double> ts{0.1, 0.5, 1.0, 2.0, 5.0};
                         const auto u = make_profile(d, R, family_of(FamilyKind::log), cfg.grid);
                         const auto ratios = levelset_cap_ratios(u, ts);
                         for (std::size_t i = 0; i < ts.size(); ++i)
                           out.push_back(make_equality(fmt::format("log/t={:g}", ts[i]), "level-set-capacity-bound",
                                                       "ratio=Cap(K_t)t^k/M_k", ratios[i], 1.0, tol(cfg, 1e-8)));
                       }
                       if (d.k() == 1 && d.n() >= 3) {
                         const std::vector<double> ts{0.1, 0.5, 1.0, 2.0, 5.0};
                         const auto u = make_profile(d, R, family_of(FamilyKind::newtonian), cfg.grid);
                         auto rec = levelset_cap_check(u, ts, tol(cfg, 1e-8));
                         rec.id = "newtonian";
                         out.push_back(std::move(rec));
                       }
                       const auto q = make_profile(d, R, family_of(FamilyKind::quadratic), cfg.grid);
                       std::vector<double> ts;
                       for (double f : {0.05, 0.1, 0.2, 0.3, 0.4, 0.6}) ts.push_back(f * R * R);
                       for (auto& r : strict_levelset(q, ts, "quadratic")) out.push_back(std::move(r));
                       const auto s = solve_dirichlet(
                           RadialMeasure::from_density(d, geometric_grid(R, cfg.grid), 0.0,
                                                       [R](double r) { return 1.0 + r * r / (R * R); }),
                           0.0);
                       std::vector<double> ts2;
                       const double depth = -s.origin_value();
                       for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) ts2.push_back(f * depth);
                       auto rec = levelset_cap_check(s, ts2, tol(cfg, 1e-8));
                       rec.id = "solver-output";
                       out.push_back(std::move(rec));
                       return out;
                     }});
  }
  tasks.push_back({Suite::capacity, "comparison", [&cfg] {
                     Records out;
                     const HessianDim d(2, 1);
                     const auto u = make_profile(d, 1.0, family_of(FamilyKind::quadratic, 2.0), cfg.grid);
                     const auto v = make_profile(d, 1.0, family_of(FamilyKind::quadratic, 1.0), cfg.grid);
                     auto r1 = comparison_check(u, v);
                     r1.id = "full-ball";
                     out.push_back(r1);
                     auto r2 = comparison_check(v, u);
                     r2.id = "empty-set";
                     out.push_back(r2);
                     const auto nodes = geometric_grid(1.0, cfg.grid);
                     const auto a = solve_dirichlet(RadialMeasure::from_density(d, nodes, 0.0, [](double) { return 1.0; }), 0.0);
                     const auto b =
                         solve_dirichlet(RadialMeasure::from_density(d, nodes, 0.0, [](double r) { return 3.0 * r * r; }), 0.0);
                     auto r3 = comparison_check(a, b);
                     r3.id = "crossing-pair/ab";
                     out.push_back(r3);
                     auto r4 = comparison_check(b, a);
                     r4.id = "crossing-pair/ba";
                     out.push_back(r4);
                     return out;
                   }});
}

// ---------------------------------------------------------------- bm

void bm_tasks(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const double R = cfg.R;
  const auto dims = dims_with(cfg, {{2, 1}, {4, 2}}, [](const HessianDim& d) { return d.intermediate(); });
  for (const auto& d : dims) {
    const double a0 = alpha0(d);
    for (double frac : {0.25, 0.5, 0.75}) {
      tasks.push_back({Suite::bm, fmt::format("{}/sharp/lambda={:g}a0", tag(d), frac), [d, frac, a0, R, &cfg] {
                         BMQuery q;
                         q.dim = d;
                         q.branch = BMBranch::exp;
                         q.lambda = frac * a0;
                         q.beta = beta0(d);
                         q.R = R;
                         q.family = family_of(FamilyKind::log);
                         q.amplitudes = 3;
                         q.grid = cfg.grid;
                         return bm_exp_check(q);
                       }});
    }
    tasks.push_back({Suite::bm, tag(d) + "/divergence", [d, a0, R, &cfg] {
                       const auto u = make_profile(d, R, family_of(FamilyKind::log), cfg.grid);
                       const auto at = exp_integral(u, a0, beta0(d));
                       const auto below = exp_integral(u, a0 * (1.0 - 1e-3), beta0(d));
                       return Records{
                           make_flag("at-alpha0", "sharp-exponential-integrability",
                                     fmt::format("lambda={:.17g} local-exponent={:.6g}", a0, at.local_exponent), at.divergent),
                           make_flag("below-alpha0", "sharp-exponential-integrability",
                                     fmt::format("lambda={:.17g} value={:.17g}", a0 * (1.0 - 1e-3), below.value),
                                     !below.divergent && std::isfinite(below.value))};
                     }});
    tasks.push_back({Suite::bm, tag(d) + "/probe", [d, R, &cfg] { return sharpness_probe(d, beta0(d), R, cfg.grid); }});
  }
  const HessianDim own(cfg.n, cfg.k);
  const bool custom = cfg.lambda || cfg.beta || cfg.family != "log";
  if (own.intermediate() && custom) {
    tasks.push_back({Suite::bm, "config/exp", [own, R, &cfg] {
                       BMQuery q;
                       q.dim = own;
                       q.branch = BMBranch::exp;
                       q.lambda = cfg.lambda.value_or(0.5 * alpha0(own));
                       q.beta = cfg.beta.value_or(beta0(own));
                       q.R = R;
                       q.family = family_of(parse_family_kind(cfg.family), 1.0, 0.0);
                       q.grid = cfg.grid;
                       return bm_exp_check(q);
                     }});
  }
  if (own.subcritical()) {
    tasks.push_back({Suite::bm, "config/lp", [own, R, &cfg] {
                       BMQuery q;
                       q.dim = own;
                       q.branch = BMBranch::lp;
                       q.p = cfg.p.value_or(own.k() * own.n() / double(own.n() - 2 * own.k()));
                       q.R = R;
                       q.family = family_of(cfg.family == "log" ? FamilyKind::power : parse_family_kind(cfg.family));
                       q.grid = cfg.grid;
                       return bm_lp_check(q);
                     }});
  }
  tasks.push_back({Suite::bm, "n3k1/endpoint", [R, &cfg] {
                     Records out;
                     const HessianDim d(3, 1);
                     const auto u = make_profile(d, R, family_of(FamilyKind::newtonian), cfg.grid);
                     const double M = hessian_mass(u);
                     const double expected = std::cbrt(unit_ball_volume(3)) / (4.0 * M_PI);
                     out.push_back(make_equality("weak-l3", "weak-endpoint-integrability",
                                                 fmt::format("expected={:.17g}", expected),
                                                 weak_lp_quasinorm(u, 3.0) / M, expected, tol(cfg, 1e-6)));
                     const double vol = ball_volume(3, R);
                     std::vector<double> ratios;
                     for (double p : {1.0, 2.0, 2.9}) {
                       const double r = lp_norm(u, p) / (std::pow(vol, 1.0 / p) * M);
                       ratios.push_back(r);
                       out.push_back(make_record(fmt::format("strong-l{:g}", p), "lp-integrability",
                                                 fmt::format("p={:g} normalised-by-volume", p), r, kInf));
                     }
                     out.push_back(make_flag("strong-monotone", "lp-integrability",
                                             fmt::format("ratios={:.10g},{:.10g},{:.10g}", ratios[0], ratios[1], ratios[2]),
                                             ratios[0] <= ratios[1] && ratios[1] <= ratios[2]));
                     const auto pw = make_profile(d, R, family_of(FamilyKind::power), cfg.grid);
                     out.push_back(make_flag("strong-l3-diverges", "weak-endpoint-integrability", "p=3 power profile",
                                             std::isinf(lp_norm(pw, 3.0))));
                     return out;
                   }});
}

// ---------------------------------------------------------------- abp

std::vector<double> dyadic_eps() {
  std::vector<double> eps;
  for (int j = 3; j <= 8; ++j) eps.push_back(std::ldexp(1.0, -j));
  return eps;
}

void abp_tasks(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  tasks.push_back({Suite::abp, "n4k2/mollified-dirac", [&cfg] {
                     const HessianDim d(4, 2);
                     const auto fam = mollified_dirac_family(d, 2.0, 6.0, {64, 128, 256, 512}, dyadic_eps(), cfg.grid);
                     return abp_bound_check(d, fam, OrliczWeight::exponential(1.0));
                   }});
  const auto dims = dims_with(cfg, {{4, 2}}, [](const HessianDim& d) { return d.intermediate(); });
  for (const auto& d : dims) {
    tasks.push_back({Suite::abp, tag(d) + "/gk", [d, &cfg] {
                       Records out;
                       const double R = cfg.R;
                       const auto w = OrliczWeight::exponential(2.0);
                       const std::vector<std::pair<std::string, std::function<double(double)>>> Gs{
                           {"G=1-4r^2", [R](double r) { return 1.0 - 4.0 * r * r / (R * R); }},
                           {"G=0.3", [](double) { return 0.3; }}};
                       for (const auto& [name, G] : Gs) {
                         const auto rep = verify_gk(d, R, G, w, {}, cfg.grid);
                         auto a = rep.pointwise;
                         a.id = name + "/pointwise";
                         auto b = rep.exp_bound;
                         b.id = name + "/exp-bound";
                         out.push_back(std::move(a));
                         out.push_back(std::move(b));
                       }
                       return out;
                     }});
  }
}

// ---------------------------------------------------------------- degiorgi

void degiorgi_tasks(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  tasks.push_back({Suite::degiorgi, "threshold", [] {
                     const double v = degiorgi_threshold(1.0, 1.0, 0.25, 0.0);
                     return Records{make_record("unit", "de-giorgi-lemma", "C0=1 delta=1 phi0=1/4 s0=0",
                                                std::abs(v - 1.0), 0.0)};
                   }});
  tasks.push_back({Suite::degiorgi, "synthetic", [] {
                     Records out;
                     const std::vector<std::pair<double, double>> shapes{{1.0, 1.0}, {2.0, 2.0}, {0.5, 3.0}, {4.0, 0.5}};
                     int idx = 0;
                     for (double phi0 : {0.25, 1.0, 4.0, 16.0, 64.0})
                       for (const auto& [L, m] : shapes) {
                         std::vector<DeGiorgiSample> smp;
                         for (int i = 0; i < 200; ++i) {
                           const double s = 1.5 * L * i / 199.0;
                           smp.push_back({s, s < L ? phi0 * std::pow(1.0 - s / L, m) : 0.0});
                         }
                         const auto data = degiorgi_fit_and_verify(smp);
                         out.push_back(degiorgi_record(data, fmt::format("fixture-{:02d}", idx++),
                                                       fmt::format("phi0={:g} L={:g} m={:g}", phi0, L, m)));
                       }
                     return out;
                   }});
  tasks.push_back({Suite::degiorgi, "abp-levels", [&cfg] {
                     const HessianDim d(4, 2);
                     const auto fam = mollified_dirac_family(d, 2.0, 6.0, {64}, {std::ldexp(1.0, -8)}, cfg.grid);
                     const auto smp = degiorgi_samples_from_abp(d, fam.front().f, OrliczWeight::exponential(1.0));
                     return Records{degiorgi_record(degiorgi_fit_and_verify(smp), "n4k2-eps=2^-8",
                                                    fmt::format("id={} samples={}", fam.front().id, smp.size()))};
                   }});
  if (cfg.fixture == "constant-phi") {
    tasks.push_back({Suite::degiorgi, "fixture", [] {
                       std::vector<DeGiorgiSample> smp;
                       for (int i = 0; i < 200; ++i) smp.push_back({10.0 * i / 199.0, 1.0});
                       return Records{degiorgi_record(degiorgi_fit_and_verify(smp), "constant-phi", "phi=1 on [0,10]")};
                     }});
  }
}

// ---------------------------------------------------------------- liouville

/// Bubble problems on B_1 for lambda = 2^j, continued along the branch from the fold at lambda = 1.
std::vector<LiouvilleSolution> bubble_branch(int top, const GridSpec& grid) {
  std::vector<LiouvilleSolution> out;
  std::vector<double> centres;
  for (int j = 0; j <= top; ++j) {
    const double lam = std::ldexp(1.0, j);
    LiouvilleProblem pr;
    pr.boundary = bubble_value(lam, 1.0);
    LiouvilleOptions opt;
    opt.grid = grid;
    if (j == 1) opt.central_guess = centres[0] - 1.0;
    if (j >= 2) opt.central_guess = 2.0 * centres[j - 1] - centres[j - 2];
    out.push_back(solve_liouville(pr, opt));
    centres.push_back(out.back().u.origin_value());
  }
  return out;
}

void liouville_tasks(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  tasks.push_back({Suite::liouville, "n2k1/bubble", [&cfg] {
                     Records out;
                     const auto branch = bubble_branch(6, cfg.grid);
                     for (int j : {0, 2, 4}) {
                       const double lam = std::ldexp(1.0, j);
                       const auto& s = branch[j];
                       double err = 0.0;
                       for (std::size_t i = 0; i < s.u.nodes().size(); ++i)
                         err = std::max(err, std::abs(s.u.values()[i] - bubble_value(lam, s.u.nodes()[i])));
                       err = std::max(err, std::abs(s.u.origin_value() - bubble_value(lam, 0.0)));
                       out.push_back(make_record(fmt::format("lambda={:g}/profile", lam), "liouville-bubble",
                                                 fmt::format("residual={:.3g} iterations={}", s.residual, s.iterations),
                                                 err, tol(cfg, 1e-4)));
                       out.push_back(make_equality(fmt::format("lambda={:g}/mass", lam), "liouville-bubble",
                                                   fmt::format("exact={:.17g}", bubble_mass(lam, 1.0)), s.mass,
                                                   bubble_mass(lam, 1.0), tol(cfg, 1e-6)));
                     }
                     SolutionSequence seq;
                     for (int j = 1; j <= 6; ++j) {
                       LiouvilleProblem pr;
                       pr.boundary = bubble_value(std::ldexp(1.0, j), 1.0);
                       seq.push_back({pr, branch[j].u});
                     }
                     const auto rep = classify_alternative(seq);
                     out.push_back(make_flag("blowup/classification", "concentration-alternative",
                                             fmt::format("lambda=2^1..2^6 class={}", to_string(rep.classification)),
                                             rep.classification == Alternative::concentration));
                     if (!rep.atom_masses.empty())
                       out.push_back(make_record("blowup/atom", "concentration-quantum",
                                                 fmt::format("atom={:.17g} threshold={:.17g} radius=0.1",
                                                             rep.atom_masses[0], rep.threshold),
                                                 rep.threshold * (1.0 - 1e-3), rep.atom_masses[0]));
                     return out;
                   }});
  tasks.push_back({Suite::liouville, "n2k1/alternatives", [&cfg] {
                     Records out;
                     LiouvilleOptions opt;
                     opt.grid = cfg.grid;
                     SolutionSequence same;
                     LiouvilleProblem base;
                     base.boundary = 0.0;
                     base.V = [](double r) { return 0.5 + r * r; };
                     const auto s = solve_liouville(base, opt);
                     for (int j = 0; j < 4; ++j) same.push_back({base, s.u});
                     const auto a = classify_alternative(same);
                     out.push_back(make_flag("repeated/classification", "concentration-alternative",
                                             fmt::format("class={}", to_string(a.classification)),
                                             a.classification == Alternative::bounded));
                     SolutionSequence up;
                     for (int j = 1; j <= 5; ++j) {
                       LiouvilleProblem pr;
                       pr.boundary = j;
                       pr.V = [j](double) { return std::exp(-double(j)); };
                       up.push_back({pr, solve_liouville(pr, opt).u});
                     }
                     const auto b = classify_alternative(up);
                     out.push_back(make_flag("uniform/classification", "concentration-alternative",
                                             fmt::format("b=j V=e^-j class={}", to_string(b.classification)),
                                             b.classification == Alternative::uniform_divergence));
                     const HessianDim d(2, 1);
                     const double thr = blowup_threshold(d, 1.0);
                     const auto labels = regular_point_classify({{0.0, 8.0 * M_PI}, {0.0, 0.5 * thr}}, d, 1.0);
                     out.push_back(make_flag("regular-points", "singular-set",
                                             "atoms=8pi,threshold/2",
                                             labels[0] == PointLabel::singular && labels[1] == PointLabel::regular));
                     return out;
                   }});
  tasks.push_back({Suite::liouville, "n2k1/smallness", [&cfg] {
                     const double C0 = 0.9 * 4.0 * M_PI;
                     SolutionSequence seq;
                     LiouvilleOptions opt;
                     opt.grid = cfg.grid;
                     for (int j = 0; j < 12; ++j) {
                       LiouvilleProblem pr;
                       pr.boundary = -0.3 + 0.05 * j;
                       const double amp = 0.2 + 0.1 * j;
                       pr.V = [amp, j](double r) { return amp * (1.0 + (j % 3) * r * r); };
                       seq.push_back({pr, solve_liouville(pr, opt).u});
                     }
                     return Records{smallness_check(seq, C0)};
                   }});
  tasks.push_back({Suite::liouville, "n2k1/harnack", [&cfg] {
                     Records out;
                     LiouvilleProblem pr;
                     pr.boundary = 0.0;
                     pr.V = [](double r) { return 0.3 * (1.0 + r * r); };
                     LiouvilleOptions opt;
                     opt.grid = cfg.grid;
                     const auto u = solve_liouville(pr, opt).u;
                     const double eps = 0.5;
                     double fmax = 0.0;
                     for (double f : s_k_radial(u).density()) fmax = std::max(fmax, f);
                     const double M = 2.0 * fmax * unit_ball_volume(2) * std::pow(0.1, 2.0 - eps);
                     double worst = 0.0;
                     std::string ratios;
                     for (double r : {0.4, 0.2, 0.1}) {
                       const auto h = harnack_ratio(u, r, M, eps);
                       worst = std::max(worst, h.ratio);
                       ratios += fmt::format("{}{:.10g}", ratios.empty() ? "" : ",", h.ratio);
                     }
                     out.push_back(make_record("solver-output", "harnack-ratio",
                                               fmt::format("M={:.6g} eps={:g} ratios={}", M, eps, ratios), worst, kInf));
                     return out;
                   }});
  const auto dims = dims_with(cfg, {{2, 1}, {4, 2}}, [](const HessianDim& d) { return d.intermediate(); });
  for (const auto& d : dims) {
    tasks.push_back({Suite::liouville, tag(d) + "/fundamental", [d, &cfg] {
                       const double thr = blowup_threshold(d, 1.0);
                       return Records{fundamental_comparison(d, cfg.R, thr, [](double) { return 1.0; }, 1.0, 0.0,
                                                             cfg.grid)};
                     }});
  }
}

// ---------------------------------------------------------------- dispatch

bool dim_fits(Suite s, const HessianDim& d) {
  switch (s) {
    case Suite::capacity: return d.intermediate() || d.subcritical();
    case Suite::abp:
    case Suite::liouville: return d.intermediate();
    case Suite::bm: return d.intermediate() || d.subcritical();
    default: return true;
  }
}

void add_tasks(Suite s, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  switch (s) {
    case Suite::sym: sym_tasks(cfg, tasks); break;
    case Suite::solve: solve_tasks(cfg, tasks); break;
    case Suite::capacity: capacity_tasks(cfg, tasks); break;
    case Suite::bm: bm_tasks(cfg, tasks); break;
    case Suite::abp: abp_tasks(cfg, tasks); break;
    case Suite::degiorgi: degiorgi_tasks(cfg, tasks); break;
    case Suite::liouville: liouville_tasks(cfg, tasks); break;
    case Suite::all: break;
  }
}

constexpr Suite kSuites[] = {Suite::sym,      Suite::solve,    Suite::capacity, Suite::bm,
                             Suite::abp,      Suite::degiorgi, Suite::liouville};

}  // namespace

Suite parse_suite(std::string_view name) {
  for (Suite s : kSuites)
    if (to_string(s) == name) return s;
  if (name == "all") return Suite::all;
  fail(Errc::invalid_argument, fmt::format("unknown suite '{}'", name));
}

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::sym: return "sym";
    case Suite::solve: return "solve";
    case Suite::capacity: return "capacity";
    case Suite::bm: return "bm";
    case Suite::abp: return "abp";
    case Suite::degiorgi: return "degiorgi";
    case Suite::liouville: return "liouville";
    case Suite::all: return "all";
  }
  return "unknown";
}

ReportFormat parse_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "jsonl") return ReportFormat::jsonl;
  fail(Errc::invalid_argument, fmt::format("unknown report format '{}' (csv or jsonl)", name));
}

void validate_config(const ExperimentConfig& cfg) {
  const HessianDim d(cfg.n, cfg.k);
  require(cfg.R > 0.0 && std::isfinite(cfg.R), Errc::invalid_argument, "radius must be positive and finite");
  require(cfg.grid.nodes >= 16, Errc::invalid_argument, "grid-n must be at least 16");
  require(cfg.grid.rmin_factor > 0.0 && cfg.grid.rmin_factor <= 1e-2, Errc::invalid_argument,
          "rmin factor must lie in (0, 1e-2]");
  if (cfg.tolerance) require(*cfg.tolerance >= 0.0, Errc::invalid_argument, "tol must be nonnegative");
  require(cfg.fixture.empty() || cfg.fixture == "constant-phi", Errc::invalid_argument,
          fmt::format("unknown fixture '{}'", cfg.fixture));
  (void)parse_family_kind(cfg.family);
  if (cfg.suite != Suite::all)
    require(dim_fits(cfg.suite, d), Errc::unsupported_dimension,
            fmt::format("suite {} does not support n={}, k={}", to_string(cfg.suite), cfg.n, cfg.k));
  if (cfg.suite == Suite::bm || cfg.suite == Suite::all) {
    if (d.intermediate()) {
      if (cfg.lambda)
        require(*cfg.lambda >= 0.0 && *cfg.lambda <= alpha0(d), Errc::invalid_argument,
                fmt::format("lambda must lie in [0, alpha0 = {:.6g}]", alpha0(d)));
      if (cfg.beta)
        require(*cfg.beta >= 1.0 && *cfg.beta <= beta0(d), Errc::invalid_argument,
                fmt::format("beta must lie in [1, beta0 = {:.6g}]", beta0(d)));
    } else if (d.subcritical() && cfg.p) {
      const double pmax = d.k() * d.n() / double(d.n() - 2 * d.k());
      require(*cfg.p >= 1.0 && *cfg.p <= pmax, Errc::invalid_argument,
              fmt::format("p must lie in [1, {:.6g}]", pmax));
    }
  }
}

SuiteResult run_suite(const ExperimentConfig& cfg) {
  SuiteResult res;
  try {
    validate_config(cfg);
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.error = e.what();
    return res;
  }
  std::vector<Task> tasks;
  if (cfg.suite == Suite::all) {
    for (Suite s : kSuites) add_tasks(s, cfg, tasks);
  } else {
    add_tasks(cfg.suite, cfg, tasks);
  }
  using Timed = std::pair<Records, double>;
  const auto results = parallel_map(tasks.size(), [&](std::size_t i) -> Timed {
    const auto t0 = std::chrono::steady_clock::now();
    Records recs;
    try {
      recs = tasks[i].run();
    } catch (const std::exception& e) {
      recs = {make_flag("error", "harness", e.what(), false)};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(recs), ms};
  });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& [recs, ms] = results[i];
    for (const auto& r : recs) {
      ReportRow row;
      row.suite = std::string(to_string(tasks[i].suite));
      row.check = tasks[i].prefix + "/" + r.id;
      row.anchor = r.anchor;
      row.inputs = r.inputs;
      row.lhs = r.lhs;
      row.rhs = r.rhs;
      row.margin = r.margin;
      row.pass = r.pass;
      row.ms = cfg.timing ? ms / recs.size() : 0.0;
      res.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(res.rows.begin(), res.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.suite, a.check) < std::tie(b.suite, b.check);
  });
  res.exit_code = std::all_of(res.rows.begin(), res.rows.end(), [](const ReportRow& r) { return r.pass; }) ? 0 : 1;
  return res;
}

// ---------------------------------------------------------------- config file

namespace {

std::size_t line_of(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 1;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::schema_error, fmt::format("config: {}", e.what()));
  }
  require(j.is_object(), Errc::schema_error, "config: line 1: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    const auto where = fmt::format("config: line {}: key '{}'", line_of(text, key), key);
    try {
      if (key == "suite") base.suite = parse_suite(value.get<std::string>());
      else if (key == "n") base.n = value.get<int>();
      else if (key == "k") base.k = value.get<int>();
      else if (key == "radius") base.R = value.get<double>();
      else if (key == "grid_n") base.grid.nodes = value.get<std::size_t>();
      else if (key == "rmin_factor") base.grid.rmin_factor = value.get<double>();
      else if (key == "lambda") base.lambda = value.get<double>();
      else if (key == "beta") base.beta = value.get<double>();
      else if (key == "p") base.p = value.get<double>();
      else if (key == "family") base.family = value.get<std::string>();
      else if (key == "tol") base.tolerance = value.get<double>();
      else if (key == "out") base.out = value.get<std::string>();
      else if (key == "format") base.format = parse_format(value.get<std::string>());
      else if (key == "fixture") base.fixture = value.get<std::string>();
      else if (key == "timing") base.timing = value.get<bool>();
      else fail(Errc::schema_error, "unknown key");
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::schema_error, fmt::format("{}: {}", where, e.what()));
    } catch (const Error& e) {
      fail(Errc::schema_error, fmt::format("{}: {}", where, e.what()));
    }
  }
  return base;
}

// ---------------------------------------------------------------- reports

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string sci(double x) { return fmt::format("{:.17e}", x); }

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

double read_number(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  const auto s = v.get<std::string>();
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  fail(Errc::schema_error, fmt::format("report: bad number '{}'", s));
}

}  // namespace

std::string format_report(const std::vector<ReportRow>& rows, ReportFormat format) {
  require(!rows.empty(), Errc::invalid_argument, "report: no rows");
  std::string out;
  if (format == ReportFormat::csv) {
    out = "suite,check,anchor,inputs,lhs,rhs,margin,pass,ms\n";
    for (const auto& r : rows)
      out += fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_field(r.suite), csv_field(r.check), csv_field(r.anchor),
                         csv_field(r.inputs), sci(r.lhs), sci(r.rhs), sci(r.margin), r.pass ? "true" : "false",
                         sci(r.ms));
    return out;
  }
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["check"] = r.check;
    j["anchor"] = r.anchor;
    j["inputs"] = r.inputs;
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["margin"] = number(r.margin);
    j["pass"] = r.pass;
    j["ms"] = number(r.ms);
    out += j.dump() + "\n";
  }
  return out;
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path) {
  const std::string text = format_report(rows, format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), Errc::io_error, fmt::format("cannot open '{}' for writing", path));
  f << text;
  f.close();
  require(!f.fail(), Errc::io_error, fmt::format("failed writing '{}'", path));
}

std::vector<ReportRow> read_report_jsonl(const std::string& text) {
  std::vector<ReportRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ReportRow r;
      r.suite = j.at("suite").get<std::string>();
      r.check = j.at("check").get<std::string>();
      r.anchor = j.at("anchor").get<std::string>();
      r.inputs = j.at("inputs").get<std::string>();
      r.lhs = read_number(j.at("lhs"));
      r.rhs = read_number(j.at("rhs"));
      r.margin = read_number(j.at("margin"));
      r.pass = j.at("pass").get<bool>();
      r.ms = read_number(j.at("ms"));
      rows.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::schema_error, fmt::format("report: line {}: {}", lineno, e.what()));
    }
  }
  return rows;
}

}  // namespace hlab
