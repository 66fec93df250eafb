// One pass/fail line per acceptance criterion; exit status 0 iff every criterion passes.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hlab/abp.hpp"
#include "hlab/capacity.hpp"
#include "hlab/core.hpp"
#include "hlab/degiorgi.hpp"
#include "hlab/error.hpp"
#include "hlab/family.hpp"
#include "hlab/fixtures.hpp"
#include "hlab/liouville.hpp"
#include "hlab/oracle.hpp"
#include "hlab/orlicz.hpp"
#include "hlab/radial.hpp"

using namespace hlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

FamilySpec spec_of(FamilyKind kind, double amplitude = 1.0) {
  FamilySpec s;
  s.kind = kind;
  s.amplitude = amplitude;
  return s;
}

const std::vector<HessianDim> kIntermediate{{2, 1}, {4, 2}};

// Sharp exponential integral on the log family, amplitude independence, divergence at alpha0.
Outcome criterion1() {
  Outcome o;
  double worst = 0.0;
  bool diverge_ok = true;
  for (const auto& d : kIntermediate) {
    const double a0 = alpha0(d);
    const double b0 = beta0(d);
    for (double c : {0.5, 1.0, 2.0}) {
      const auto u = make_profile(d, 1.0, spec_of(FamilyKind::log, c));
      for (double frac : {0.25, 0.5, 0.75}) {
        const double lam = frac * a0;
        const double exact = ball_volume(d.n(), 1.0) * a0 / (a0 - lam);
        worst = std::max(worst, rel(exp_integral(u, lam, b0).value, exact));
        ExpIntegralOptions quad;
        quad.use_closed_form = false;
        worst = std::max(worst, rel(exp_integral(u.without_canonical(), lam, b0, quad).value, exact));
      }
      diverge_ok = diverge_ok && exp_integral(u, a0, b0).divergent &&
                   !exp_integral(u, a0 * (1.0 - 1.0 / 1024.0), b0).divergent;
    }
  }
  o.pass = worst <= 1e-6 && diverge_ok;
  o.detail = fmt::format("max rel err {:.3e} (tol 1e-6), divergence flagged only at alpha0: {}", worst, diverge_ok);
  return o;
}

// Isocapacitary saturation at beta0, with Cap taken from the numerical extremal mass.
Outcome criterion2() {
  double worst = 0.0;
  for (const auto& d : kIntermediate) {
    const int k = d.k();
    for (double f : {0.5, 0.1, 0.01}) {
      const CapacityConfig cc{d, f, 1.0};
      const double cap = hessian_mass(extremal_profile(cc));
      const double lhs = ball_volume(d.n(), f) * std::exp(alpha0(d) * std::pow(cap, -beta0(d) / (k + 1)));
      worst = std::max(worst, rel(lhs, ball_volume(d.n(), 1.0)));
      worst = std::max(worst, std::abs(isocapacitary_ratio(cc, beta0(d)) - 1.0));
    }
  }
  return {worst <= 1e-8, fmt::format("max rel err {:.3e} (tol 1e-8)", worst)};
}

// Level-set capacity bound: equality on the log family, ratio <= 1 on Newtonian and quadratic profiles.
Outcome criterion3() {
  const std::vector<double> ts{0.1, 0.5, 1.0, 2.0, 5.0};
  double eq = 0.0;
  for (const auto& d : kIntermediate) {
    const auto ratios = levelset_cap_ratios(make_profile(d, 1.0, spec_of(FamilyKind::log)), ts);
    for (double r : ratios) eq = std::max(eq, std::abs(r - 1.0));
  }
  double newton = 0.0;
  for (const HessianDim d : {HessianDim(3, 1), HessianDim(4, 1)})
    for (double r : levelset_cap_ratios(make_profile(d, 1.0, spec_of(FamilyKind::newtonian)), ts))
      newton = std::max(newton, r);
  const std::vector<double> tq{0.05, 0.1, 0.2, 0.3, 0.4, 0.6};
  double quad = 0.0;
  for (const HessianDim d : {HessianDim(2, 1), HessianDim(3, 1), HessianDim(4, 2)})
    for (double r : levelset_cap_ratios(make_profile(d, 1.0, spec_of(FamilyKind::quadratic)), tq))
      quad = std::max(quad, r);
  const bool pass = eq <= 1e-8 && newton <= 1.0 + 1e-8 && quad < 1.0;
  return {pass, fmt::format("log |ratio-1| {:.3e} (tol 1e-8), newtonian max ratio {:.12f} (<= 1, attained), "
                            "quadratic max ratio {:.6f} (< 1)",
                            eq, newton, quad)};
}

// Fundamental solution from a Dirac mass, and constant cumulative mass of log r.
Outcome criterion4() {
  double sup = 0.0;
  double mass = 0.0;
  for (const auto& d : kIntermediate) {
    const double c = d.n() == 2 ? 2.0 * M_PI : 3.0 * M_PI * M_PI;
    const auto nodes = geometric_grid(1.0);
    const auto z = solve_dirichlet(RadialMeasure::dirac(d, nodes, c), 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (z.nodes()[i] >= 1e-6) sup = std::max(sup, std::abs(z.values()[i] - std::log(z.nodes()[i])));
    const auto u = sample_profile(d, nodes, [](double r) { return std::log(r); }, [](double r) { return 1.0 / r; });
    for (double m : u.cumulative_mass()) mass = std::max(mass, rel(m, c));
  }
  return {sup <= 1e-6 && mass <= 1e-8,
          fmt::format("sup |u - log r| {:.3e} (tol 1e-6), mass rel dev {:.3e} (tol 1e-8)", sup, mass)};
}

// De Giorgi threshold and vanishing on hypothesis-satisfying fixtures.
Outcome criterion5() {
  const double unit = degiorgi_threshold(1.0, 1.0, 0.25, 0.0);
  int ok = 0;
  int total = 0;
  double worst_gap = -INFINITY;
  for (double phi0 : {0.25, 1.0, 4.0, 16.0, 64.0})
    for (auto [L, m] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 2.0}, {0.5, 3.0}, {3.0, 0.5}}) {
      std::vector<DeGiorgiSample> smp;
      for (int i = 0; i < 240; ++i) {
        const double s = 2.0 * L * i / 239.0;
        smp.push_back({s, s < L ? phi0 * std::pow(1.0 - s / L, m) : 0.0});
      }
      const auto data = degiorgi_fit_and_verify(smp);
      ++total;
      if (data.fitted && data.vanishing <= data.s_inf) ++ok;
      worst_gap = std::max(worst_gap, data.vanishing - data.s_inf);
    }
  return {unit == 1.0 && ok == total && total == 20,
          fmt::format("threshold(1,1,1/4,0) = {:.17g}, {}/{} fixtures vanish by s_inf (max vanishing - s_inf {:.4f})",
                      unit, ok, total, worst_gap)};
}

double bubble(double lam, double r) { return -std::log(8.0 * lam * lam / std::pow(1.0 + lam * lam * r * r, 2)); }

// Liouville bubbles, local mass, and concentration with the quantum.
Outcome criterion6() {
  std::vector<LiouvilleSolution> branch;
  std::vector<double> centre;
  for (int j = 0; j <= 6; ++j) {
    const double lam = std::ldexp(1.0, j);
    LiouvilleProblem pr;
    pr.boundary = bubble(lam, 1.0);
    LiouvilleOptions opt;
    if (j == 1) opt.central_guess = centre[0] - 1.0;
    if (j >= 2) opt.central_guess = 2.0 * centre[j - 1] - centre[j - 2];
    branch.push_back(solve_liouville(pr, opt));
    centre.push_back(branch.back().u.origin_value());
  }
  double sup = 0.0;
  double mass = 0.0;
  for (int j : {0, 2, 4}) {
    const double lam = std::ldexp(1.0, j);
    const auto& u = branch[j].u;
    for (std::size_t i = 0; i < u.nodes().size(); ++i)
      sup = std::max(sup, std::abs(u.values()[i] - bubble(lam, u.nodes()[i])));
    const double exact = 8.0 * M_PI * lam * lam / (1.0 + lam * lam);
    mass = std::max(mass, rel(local_mass(u, [](double) { return 1.0; }, 1.0), exact));
  }
  SolutionSequence seq;
  for (int j = 1; j <= 6; ++j) {
    LiouvilleProblem pr;
    pr.boundary = bubble(std::ldexp(1.0, j), 1.0);
    seq.push_back({pr, branch[j].u});
  }
  const auto rep = classify_alternative(seq);
  const bool conc = rep.classification == Alternative::concentration && !rep.atom_masses.empty();
  const double atom = conc ? rep.atom_masses[0] : 0.0;
  const double quantum = 4.0 * M_PI;
  const bool pass = sup <= 1e-4 && mass <= 1e-6 && conc && atom >= quantum * (1.0 - 1e-3);
  return {pass, fmt::format("sup err {:.3e} (tol 1e-4), mass rel err {:.3e} (tol 1e-6), class {}, atom {:.6f} "
                            "vs 4pi {:.6f} (margin {:.6f}, 8pi = {:.6f})",
                            sup, mass, to_string(rep.classification), atom, quantum, atom - quantum, 8.0 * M_PI)};
}

// Smallness: sub-threshold sweep has a uniform lower bound.
Outcome criterion7() {
  const double C0 = 0.9 * 4.0 * M_PI;
  SolutionSequence seq;
  double max_mass = 0.0;
  for (int j = 0; j < 12; ++j) {
    LiouvilleProblem pr;
    pr.boundary = -0.35 + 0.06 * j;
    const double amp = 1.3 - 0.09 * j;
    pr.V = [amp, j](double r) { return amp * (1.0 + 0.5 * (j % 4) * r * r); };
    const auto sol = solve_liouville(pr);
    max_mass = std::max(max_mass, sol.mass);
    seq.push_back({pr, sol.u});
  }
  const auto rec = smallness_check(seq, C0);
  return {rec.pass && max_mass <= C0,
          fmt::format("12 problems, max mass {:.4f} <= 0.9*4pi = {:.4f}, observed min u {:.6f} >= uniform bound {:.6f}",
                      max_mass, C0, -rec.lhs, -rec.rhs)};
}

// Weak endpoint, strong ratios, strong divergence at p = 3.
Outcome criterion8() {
  const HessianDim d(3, 1);
  const auto u = make_profile(d, 1.0, spec_of(FamilyKind::newtonian));
  const double M = hessian_mass(u);
  const double expected = std::cbrt(4.0 * M_PI / 3.0) / (4.0 * M_PI);
  const double weak = weak_lp_quasinorm(u, 3.0) / M;
  const double vol = 4.0 * M_PI / 3.0;
  std::vector<double> ratios;
  for (double p : {1.0, 2.0, 2.9}) ratios.push_back(lp_norm(u, p) / (std::pow(vol, 1.0 / p) * M));
  const bool finite = std::all_of(ratios.begin(), ratios.end(), [](double r) { return std::isfinite(r); });
  const bool monotone = ratios[0] <= ratios[1] && ratios[1] <= ratios[2];
  // ||1/r - 1||_1 = 2pi/3 and ||1/r - 1||_2^2 = 4pi/3 on the unit ball.
  const double l1 = rel(lp_norm(u, 1.0), 2.0 * M_PI / 3.0);
  const double l2 = rel(lp_norm(u, 2.0), std::sqrt(4.0 * M_PI / 3.0));
  const bool diverges = std::isinf(lp_norm(make_profile(d, 1.0, spec_of(FamilyKind::power)), 3.0));
  const double werr = rel(weak, expected);
  const bool pass = werr <= 1e-6 && finite && monotone && l1 <= 1e-6 && l2 <= 1e-6 && diverges;
  return {pass, fmt::format("weak/M rel err {:.3e} (tol 1e-6), ratios {:.6f} {:.6f} {:.6f} monotone {}, "
                            "closed-form L1/L2 rel err {:.1e}/{:.1e}, L3 diverges {}",
                            werr, ratios[0], ratios[1], ratios[2], monotone, l1, l2, diverges)};
}

// ABP boundedness on the mollified-Dirac family.
Outcome criterion9() {
  const HessianDim d(4, 2);
  std::vector<double> eps;
  for (int j = 3; j <= 8; ++j) eps.push_back(std::ldexp(1.0, -j));
  const auto fam = mollified_dirac_family(d, 2.0, 6.0, {64, 128, 256, 512}, eps);
  const auto recs = abp_bound_check(d, fam, OrliczWeight::exponential(1.0));
  double spread = 0.0;
  double growth = INFINITY;
  int held = 0;
  bool all = true;
  for (const auto& r : recs) {
    all = all && r.pass;
    if (r.id.find("sup-u-spread") != std::string::npos) spread = std::max(spread, r.lhs);
    if (r.id.find("f-sup-growth") != std::string::npos) growth = std::min(growth, r.rhs);
    if (r.id.find("held-out") != std::string::npos) ++held;
  }
  const bool pass = all && spread < 0.2 && growth > 1e3 && held > 0;
  return {pass, fmt::format("max sup-u spread {:.4f} (< 0.2), min ||f||_inf growth {:.1f} (> 1e3), {} held-out "
                            "members within 1.1 x fit: {}",
                            spread, growth, held, all)};
}

// Eigenvalue route versus principal minors, radial S_k versus full-Hessian differences.
Outcome criterion10() {
  double mat = 0.0;
  for (std::size_t i = 0; i < fixtures::kMatrixCount; ++i) {
    const auto M = fixtures::symmetric_matrix(i);
    const int n = static_cast<int>(M.rows());
    auto spec = symmetric_spectrum(M);
    for (double& x : spec) x = std::abs(x);
    for (int j = 1; j <= n; ++j) {
      const double a = s_k_of_matrix(M, HessianDim(n, j));
      const double b = oracle::principal_minor_sum(M, j);
      mat = std::max(mat, std::abs(a - b) / std::max(elem_sym(spec, j), 1e-300));
    }
  }
  double rad = 0.0;
  const std::vector<std::pair<HessianDim, FamilySpec>> cases{
      {{2, 1}, [] { auto s = spec_of(FamilyKind::mollified_log); s.eps = 0.1; return s; }()},
      {{4, 2}, [] { auto s = spec_of(FamilyKind::mollified_log); s.eps = 0.1; return s; }()},
      {{3, 1}, spec_of(FamilyKind::quadratic)},
      {{5, 3}, spec_of(FamilyKind::quadratic)},
      {{6, 3}, spec_of(FamilyKind::quadratic, 0.7)}};
  for (const auto& [d, s] : cases) {
    const auto u = make_profile(d, 1.0, s);
    const auto mu = s_k_radial(u);
    for (double target : {0.3, 0.6}) {
      const std::size_t i = numerics::bracket(u.nodes(), target);
      const double fd = oracle::radial_s_k_fd(u, u.nodes()[i], 2e-3);
      rad = std::max(rad, rel(mu.density()[i], fd));
    }
  }
  return {mat <= 1e-9 && rad <= 1e-5,
          fmt::format("50 matrices max rel err {:.3e} (tol 1e-9), radial vs full-Hessian max rel err {:.3e} (tol 1e-5)",
                      mat, rad)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sharp exponential integral", criterion1}, {"isocapacitary saturation", criterion2},
      {"level-set capacity bound", criterion3},   {"fundamental solution", criterion4},
      {"De Giorgi lemma", criterion5},            {"Liouville bubble", criterion6},
      {"smallness", criterion7},                  {"weak endpoint", criterion8},
      {"ABP boundedness", criterion9},            {"oracle equivalence", criterion10}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("error: {}", e.what())};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s | %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
