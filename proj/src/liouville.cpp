#include "hlab/liouville.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hlab/error.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSubsteps = 4;

double mass_constant(const HessianDim& dim) { return unit_ball_volume(dim.n()) * binomial(dim.n(), dim.k()); }

void validate(const LiouvilleProblem& prob) {
  require(prob.dim.intermediate(), Errc::unsupported_dimension, "liouville: requires k = n/2");
  require(prob.R > 0.0 && std::isfinite(prob.R), Errc::invalid_argument, "liouville: R must be positive");
  require(prob.p > 1.0, Errc::invalid_argument, "liouville: p must be > 1");
  require(std::isfinite(prob.boundary), Errc::invalid_argument, "liouville: boundary value must be finite");
  require(static_cast<bool>(prob.V), Errc::invalid_argument, "liouville: V is missing");
}

/// Cumulative int_{B_{r_i}} V e^{-u} on the nodes of u.
std::vector<double> cumulative_source(const RadialProfile& u, const std::function<double(double)>& V) {
  const int n = u.dim().n();
  const double omega = unit_ball_volume(n);
  const auto r = u.nodes();
  const auto val = u.values();
  std::vector<double> s(r.size());
  std::vector<double> g(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    s[i] = std::log(r[i]);
    g[i] = n * omega * std::pow(r[i], n) * V(r[i]) * std::exp(-val[i]);
  }
  auto cum = numerics::cumulative_integral(s, g);
  const double core = omega * std::pow(r[0], n) * V(r[0]) * std::exp(-val[0]);
  for (double& c : cum) c += core;
  return cum;
}

double pde_residual(const RadialProfile& u, const std::function<double(double)>& V) {
  const auto m = u.cumulative_mass();
  const auto src = cumulative_source(u, V);
  const double total = std::max(src.back(), m.back());
  if (!(total > 0.0)) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) worst = std::max(worst, std::abs(m[i] - src[i]));
  return worst / total;
}

}  // namespace

RadialProfile shoot_liouville(const LiouvilleProblem& prob, double central, const GridSpec& grid) {
  validate(prob);
  require(std::isfinite(central), Errc::invalid_argument, "liouville: central value must be finite");
  const HessianDim& dim = prob.dim;
  const int n = dim.n();
  const double k = dim.k();
  const double c = mass_constant(dim);
  const double omega = unit_ball_volume(n);
  auto nodes = geometric_grid(prob.R, grid);
  const std::size_t N = nodes.size();
  std::vector<double> u(N);
  std::vector<double> m(N);
  const double r0 = nodes[0];
  m[0] = omega * std::pow(r0, n) * prob.V(r0) * std::exp(-central);
  u[0] = central + (k / n) * std::pow(m[0] / c, 1.0 / k);
  // du/ds = (m/c)^{1/k}, dm/ds = n omega r^n V e^{-u}, s = log r.
  auto du = [&](double mm) { return std::pow(std::max(mm, 0.0) / c, 1.0 / k); };
  auto dm = [&](double s, double uu) {
    const double r = std::exp(s);
    return n * omega * std::exp(n * s - uu) * prob.V(r);
  };
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double s0 = std::log(nodes[i]);
    const double h = (std::log(nodes[i + 1]) - s0) / kSubsteps;
    double uu = u[i];
    double mm = m[i];
    for (int j = 0; j < kSubsteps; ++j) {
      const double s = s0 + j * h;
      const double ku1 = du(mm), km1 = dm(s, uu);
      const double ku2 = du(mm + 0.5 * h * km1), km2 = dm(s + 0.5 * h, uu + 0.5 * h * ku1);
      const double ku3 = du(mm + 0.5 * h * km2), km3 = dm(s + 0.5 * h, uu + 0.5 * h * ku2);
      const double ku4 = du(mm + h * km3), km4 = dm(s + h, uu + h * ku3);
      uu += h / 6.0 * (ku1 + 2 * ku2 + 2 * ku3 + ku4);
      mm += h / 6.0 * (km1 + 2 * km2 + 2 * km3 + km4);
    }
    if (!std::isfinite(uu) || !std::isfinite(mm)) fail(Errc::no_solution_found, "liouville: shooting overflowed");
    u[i + 1] = uu;
    m[i + 1] = mm;
  }
  std::vector<double> slope(N);
  for (std::size_t i = 0; i < N; ++i) slope[i] = du(m[i]) / nodes[i];
  const double b = u.back();
  nodes.back() = prob.R;
  return RadialProfile(dim, prob.R, b, std::move(nodes), std::move(u), std::move(slope), 0.0);
}

namespace {

LiouvilleSolution solve_shooting(const LiouvilleProblem& prob, const LiouvilleOptions& opt) {
  const double b = prob.boundary;
  auto g = [&](double a) {
    try {
      return shoot_liouville(prob, a, opt.grid).boundary() - b;
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  double a = opt.central_guess.value_or(b);
  double ga = g(a);
  require(std::isfinite(ga), Errc::no_solution_found, "liouville: shooting failed at the initial guess");
  const double target = 1e-13 * (1.0 + std::abs(b));
  int it = 0;
  bool stalled = false;
  for (; it < opt.max_iterations && std::abs(ga) > target; ++it) {
    const double h = 1e-6 * (1.0 + std::abs(a));
    const double dg = (g(a + h) - g(a - h)) / (2.0 * h);
    if (!std::isfinite(dg) || dg == 0.0) {
      stalled = true;
      break;
    }
    double step = std::clamp(-ga / dg, -2.0, 2.0);
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
      const double gn = g(a + step);
      if (std::isfinite(gn) && std::abs(gn) < std::abs(ga)) {
        a += step;
        ga = gn;
        improved = true;
        break;
      }
    }
    if (!improved || std::abs(step) <= opt.tolerance * (1.0 + std::abs(a))) {
      stalled = !improved;
      if (!improved) break;
    }
  }
  // A stall at a fold of the solution branch leaves |g| at the level of the discretisation error.
  const double accept = stalled ? 1e-7 * (1.0 + std::abs(b)) : 1e-9 * (1.0 + std::abs(b));
  if (!(std::abs(ga) <= std::max(accept, target)))
    fail(Errc::no_solution_found,
         fmt::format("liouville: shooting did not reach u(R) = {:.6g} (miss {:.3g} after {} iterations)", b, ga, it));
  auto prof = shoot_liouville(prob, a, opt.grid);
  auto values = std::vector<double>(prof.values().begin(), prof.values().end());
  values.back() = b;
  RadialProfile u(prob.dim, prob.R, b, std::vector<double>(prof.nodes().begin(), prof.nodes().end()), std::move(values),
                  std::vector<double>(prof.slope().begin(), prof.slope().end()), 0.0);
  LiouvilleSolution sol{u, pde_residual(u, prob.V), local_mass(u, prob.V, prob.R), it};
  return sol;
}

LiouvilleSolution solve_picard(const LiouvilleProblem& prob, const LiouvilleOptions& opt) {
  const double b = prob.boundary;
  auto nodes = geometric_grid(prob.R, opt.grid);
  std::vector<double> u(nodes.size(), b);
  std::vector<double> slope(nodes.size(), 0.0);
  if (opt.initial) {
    require(opt.initial->nodes().size() == nodes.size(), Errc::invalid_argument,
            "liouville: initial profile must use the solver grid");
    u.assign(opt.initial->values().begin(), opt.initial->values().end());
    slope.assign(opt.initial->slope().begin(), opt.initial->slope().end());
  }
  double theta = 1.0;
  double last_residual = kInf;
  int it = 0;
  bool converged = false;
  std::vector<double> f(nodes.size());
  for (; it < opt.max_iterations; ++it) {
    for (std::size_t i = 0; i < nodes.size(); ++i) f[i] = prob.V(nodes[i]) * std::exp(-u[i]);
    const auto T = solve_dirichlet(RadialMeasure::from_density_values(prob.dim, nodes, 0.0, f), b);
    double diff = 0.0;
    double size = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      diff = std::max(diff, std::abs(T.values()[i] - u[i]));
      size = std::max(size, std::abs(u[i]));
    }
    if (!std::isfinite(diff)) fail(Errc::no_solution_found, "liouville: fixed-point iteration overflowed");
    if (diff > last_residual) theta = std::max(theta * 0.5, 1.0 / 64.0);
    last_residual = diff;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      u[i] += theta * (T.values()[i] - u[i]);
      slope[i] += theta * (T.slope()[i] - slope[i]);
    }
    if (theta * diff <= opt.tolerance * (1.0 + size)) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged)
    fail(Errc::no_solution_found,
         fmt::format("liouville: fixed-point iteration did not converge in {} iterations", opt.max_iterations));
  u.back() = b;
  RadialProfile prof(prob.dim, prob.R, b, std::move(nodes), std::move(u), std::move(slope), 0.0);
  return LiouvilleSolution{prof, pde_residual(prof, prob.V), local_mass(prof, prob.V, prob.R), it};
}

}  // namespace

LiouvilleSolution solve_liouville(const LiouvilleProblem& prob, const LiouvilleOptions& options) {
  validate(prob);
  LiouvilleSolution sol =
      options.method == LiouvilleMethod::shooting ? solve_shooting(prob, options) : solve_picard(prob, options);
  if (!(sol.residual < options.residual_tolerance))
    fail(Errc::no_solution_found, fmt::format("liouville: PDE residual {:.3g} above {:.3g}", sol.residual,
                                              options.residual_tolerance));
  return sol;
}

double bubble_value(double lambda, double r) {
  const double l2 = lambda * lambda;
  return -std::log(8.0 * l2) + 2.0 * std::log1p(l2 * r * r);
}

double bubble_slope(double lambda, double r) {
  const double l2 = lambda * lambda;
  return 4.0 * l2 * r / (1.0 + l2 * r * r);
}

double bubble_mass(double lambda, double R) {
  const double x = lambda * lambda * R * R;
  return 8.0 * M_PI * x / (1.0 + x);
}

double local_mass(const RadialProfile& u, const std::function<double(double)>& V, double r) {
  require(r >= 0.0 && r <= u.radius() * (1.0 + 1e-12), Errc::invalid_argument, "local_mass: r outside [0, R]");
  const int n = u.dim().n();
  const double omega = unit_ball_volume(n);
  const auto nodes = u.nodes();
  if (r <= nodes.front()) return omega * std::pow(r, n) * V(nodes.front()) * std::exp(-u.values().front());
  const auto cum = cumulative_source(u, V);
  const std::size_t i = numerics::bracket(nodes, r);
  if (r == nodes[i]) return cum[i];
  auto g = [&](double s) {
    const double x = std::exp(s);
    return n * omega * std::exp(n * s - u.value_at(x)) * V(x);
  };
  return cum[i] + numerics::integrate_cell(g, std::log(nodes[i]), std::log(std::min(r, u.radius())));
}

double potential_norm(const LiouvilleProblem& prob, const GridSpec& grid) {
  validate(prob);
  const auto nodes = geometric_grid(prob.R, grid);
  if (std::isinf(prob.p)) {
    double sup = 0.0;
    for (double r : nodes) sup = std::max(sup, std::abs(prob.V(r)));
    return sup;
  }
  std::vector<double> f(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) f[i] = std::pow(std::abs(prob.V(nodes[i])), prob.p);
  return std::pow(RadialMeasure::from_density_values(prob.dim, nodes, 0.0, std::move(f)).total(), 1.0 / prob.p);
}

double smallness_depth_bound(const LiouvilleProblem& prob, double C0, const GridSpec& grid) {
  validate(prob);
  const HessianDim& dim = prob.dim;
  const int n = dim.n();
  const double k = dim.k();
  const double pc = conjugate_exponent(prob.p);
  const double a0 = alpha0(dim);
  const double threshold = blowup_threshold(dim, pc);
  require(C0 > 0.0 && C0 < threshold, Errc::invalid_argument, "smallness: need 0 < C0 < (alpha0/p')^k");
  const double c = mass_constant(dim);
  const double omega = unit_ball_volume(n);
  // Exponent s in (p', alpha0/C0^{1/k}) keeps both the exponential bound and Hoelder (q > 1) alive.
  const double s_max = a0 / std::pow(C0, 1.0 / k);
  const double s = 0.5 * (pc + s_max);
  const double inv_q = (std::isinf(prob.p) ? 0.0 : 1.0 / prob.p) + 1.0 / s;
  const double e = 1.0 - inv_q;
  const double vol = ball_volume(n, prob.R);
  const double exp_norm = std::pow(vol * a0 / (a0 - s * std::pow(C0, 1.0 / k)), 1.0 / s);
  const double F = potential_norm(prob, grid) * std::exp(-prob.boundary) * exp_norm;
  if (F == 0.0) return 0.0;
  // m(r) <= min(C0, F omega^e r^{n e}); u' = (m/c)^{1/k}/r.
  const double A = F * std::pow(omega, e);
  const double gamma = n * e / k;
  const double r_star = std::pow(C0 / A, 1.0 / (n * e));
  const double coef = std::pow(A / c, 1.0 / k);
  if (r_star >= prob.R) return coef * std::pow(prob.R, gamma) / gamma;
  return coef * std::pow(r_star, gamma) / gamma + std::pow(C0 / c, 1.0 / k) * std::log(prob.R / r_star);
}

CheckRecord smallness_check(const SolutionSequence& seq, double C0) {
  require(!seq.empty(), Errc::invalid_argument, "smallness: empty sequence");
  double bound = kInf;
  double observed = kInf;
  double max_mass = 0.0;
  for (const auto& mem : seq) {
    const double mass = local_mass(mem.u, mem.problem.V, mem.problem.R);
    require(mass <= C0 * (1.0 + 1e-9), Errc::precondition_violation,
            fmt::format("smallness: member mass {:.6g} exceeds C0 = {:.6g}", mass, C0));
    max_mass = std::max(max_mass, mass);
    const double D = smallness_depth_bound(mem.problem, C0);
    bound = std::min(bound, std::min(mem.problem.boundary - D, 0.0));
    const auto v = mem.u.values();
    observed = std::min({observed, mem.u.origin_value(), *std::min_element(v.begin(), v.end()), 0.0});
  }
  return make_record("smallness", "smallness-boundedness",
                     fmt::format("members={} C0={:.6g} max-mass={:.6g} uniform-lower-bound={:.6g} observed-min={:.6g}",
                                 seq.size(), C0, max_mass, bound, observed),
                     -observed, -bound);
}

std::vector<PointLabel> regular_point_classify(const std::vector<Atom>& atoms, const HessianDim& dim,
                                               double p_conjugate) {
  const double threshold = blowup_threshold(dim, p_conjugate);
  std::vector<PointLabel> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(a.mass >= threshold ? PointLabel::singular : PointLabel::regular);
  return out;
}

std::string_view to_string(Alternative a) noexcept {
  switch (a) {
    case Alternative::bounded: return "bounded";
    case Alternative::uniform_divergence: return "uniform-divergence";
    case Alternative::concentration: return "concentration";
    case Alternative::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

enum class Trend { up, down, bounded, unclear };

Trend trend_of(const std::vector<double>& x) {
  const std::size_t N = x.size();
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  std::vector<double> d(N - 1);
  for (std::size_t j = 0; j + 1 < N; ++j) d[j] = x[j + 1] - x[j];
  double late = 0.0;
  for (std::size_t j = (N - 1) / 2; j < d.size(); ++j) late = std::max(late, std::abs(d[j]));
  double early = 0.0;
  for (std::size_t j = 0; j < (N - 1) / 2; ++j) early = std::max(early, std::abs(d[j]));
  if (late <= 1e-3 * scale || late <= 0.5 * early) return Trend::bounded;
  // Eventually monotone (second half of the members) with increments that do not die out.
  const std::size_t from = (N - 1) / 2;
  const double total = x.back() - x[from];
  double big = 0.0;
  for (std::size_t j = from; j < d.size(); ++j) big = std::max(big, std::abs(d[j]));
  const bool up = std::all_of(d.begin() + from, d.end(), [](double v) { return v > 0.0; });
  const bool down = std::all_of(d.begin() + from, d.end(), [](double v) { return v < 0.0; });
  if (up && total > 1.0 && d.back() >= 0.25 * big) return Trend::up;
  if (down && total < -1.0 && -d.back() >= 0.25 * big) return Trend::down;
  return Trend::unclear;
}

}  // namespace

BlowupReport classify_alternative(const SolutionSequence& seq, double atom_radius_fraction) {
  require(seq.size() >= 4, Errc::invalid_argument, "classify: need at least 4 members");
  BlowupReport rep;
  for (const auto& mem : seq) {
    const double R = mem.problem.R;
    rep.compact_min.push_back(mem.u.value_at(0.25 * R));
    rep.compact_max.push_back(mem.u.value_at(0.75 * R));
    rep.central.push_back(mem.u.origin_value());
  }
  const Trend kmin = trend_of(rep.compact_min);
  const Trend kmax = trend_of(rep.compact_max);
  const Trend centre = trend_of(rep.central);
  const auto& last = seq.back();
  rep.threshold = blowup_threshold(last.problem.dim, conjugate_exponent(last.problem.p));
  if (kmin == Trend::up && centre == Trend::down) {
    rep.classification = Alternative::concentration;
    rep.blowup_set = {0.0};
    const double atom = local_mass(last.u, last.problem.V, atom_radius_fraction * last.problem.R);
    rep.atom_masses = {atom};
    rep.margins = {atom - rep.threshold * (1.0 - 1e-3)};
  } else if (kmin == Trend::up && centre == Trend::up) {
    rep.classification = Alternative::uniform_divergence;
  } else if (kmin == Trend::bounded && kmax == Trend::bounded && centre == Trend::bounded) {
    rep.classification = Alternative::bounded;
  } else {
    rep.classification = Alternative::inconclusive;
  }
  return rep;
}

HarnackRecord harnack_ratio(const RadialProfile& u, double r, double M, double eps) {
  const double R = u.radius();
  require(r > 0.0 && r < R, Errc::invalid_argument, "harnack: need 0 < r < R");
  require(M > 0.0 && eps > 0.0, Errc::invalid_argument, "harnack: need M > 0 and eps > 0");
  const auto v = u.values();
  require(u.boundary() <= 0.0 && *std::max_element(v.begin(), v.end()) <= 0.0, Errc::precondition_violation,
          "harnack: requires u <= 0");
  require(u.atom() == 0.0, Errc::precondition_violation, "harnack: an atom violates mu(B(x,s)) <= M s^{n-2k+eps}");
  const HessianDim& dim = u.dim();
  const int n = dim.n();
  const int k = dim.k();
  const double expo = n - 2.0 * k + eps;
  const auto nodes = u.nodes();
  const auto m = u.cumulative_mass();
  const auto mu = s_k_radial(u);
  double fmax = 0.0;
  for (std::size_t i = 0; i < nodes.size() && nodes[i] <= 0.2 * R; ++i) {
    fmax = std::max(fmax, mu.density()[i]);
    if (nodes[i] < 0.1 * R)
      require(m[i] <= M * std::pow(nodes[i], expo) * (1.0 + 1e-9), Errc::precondition_violation,
              "harnack: mu(B_s) <= M s^{n-2k+eps} fails at the centre");
  }
  require(fmax * unit_ball_volume(n) * std::pow(0.1 * R, 2.0 * k - eps) <= M * (1.0 + 1e-9),
          Errc::precondition_violation, "harnack: mu(B(x,s)) <= M s^{n-2k+eps} fails off the centre");
  HarnackRecord rec;
  rec.sup = -u.origin_value();
  rec.inf = -u.value_at(r);
  rec.ratio = rec.inf > 0.0 ? rec.sup / rec.inf : kInf;
  rec.density_ok = true;
  return rec;
}

CheckRecord fundamental_comparison(const HessianDim& dim, double R, double atom,
                                   const std::function<double(double)>& density, double p_conjugate,
                                   double boundary, const GridSpec& grid) {
  require(dim.intermediate(), Errc::unsupported_dimension, "fundamental comparison requires k = n/2");
  require(p_conjugate >= 1.0, Errc::invalid_argument, "fundamental comparison: p' must be >= 1");
  auto nodes = geometric_grid(R, grid);
  const auto z = solve_dirichlet(RadialMeasure::from_density(dim, nodes, atom, density), boundary);
  const double slope = dim.n() / p_conjugate;
  double inner = -kInf;
  double outer = -kInf;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = z.nodes()[i];
    if (r >= 0.1 * R) break;
    const double d = z.values()[i] - slope * std::log(r);
    (r < 1e-4 * R ? inner : outer) = std::max(r < 1e-4 * R ? inner : outer, d);
  }
  return make_record("fundamental-comparison", "fundamental-solution-comparison",
                     fmt::format("n={} k={} R={:.6g} atom={:.17g} threshold={:.17g} p'={:.6g}", dim.n(), dim.k(), R, atom,
                                 blowup_threshold(dim, p_conjugate), p_conjugate),
                     inner, outer, 1e-9 * (1.0 + std::abs(outer)));
}

}  // namespace hlab
