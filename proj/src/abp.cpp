#include "hlab/abp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "hlab/error.hpp"
#include "hlab/parallel.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_of(std::span<const double> r) {
  std::vector<double> s(r.size());
  std::transform(r.begin(), r.end(), s.begin(), [](double v) { return std::log(v); });
  return s;
}

/// Weights W_i with sum W_i g(r_i) ~ int_{B_R} g dx (trapezoid in log r plus the core ball).
std::vector<double> volume_weights(int n, std::span<const double> r) {
  const double omega = unit_ball_volume(n);
  std::vector<double> w(r.size(), 0.0);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double h = std::log(r[i + 1] / r[i]);
    w[i] += 0.5 * h * n * omega * std::pow(r[i], n);
    w[i + 1] += 0.5 * h * n * omega * std::pow(r[i + 1], n);
  }
  w[0] += omega * std::pow(r[0], n);
  return w;
}

}  // namespace

GkReport verify_gk(const HessianDim& dim, std::vector<double> nodes, std::vector<double> eG,
                   const OrliczWeight& weight, const GkOptions& options) {
  require(dim.intermediate(), Errc::unsupported_dimension, "verify_gk requires k = n/2");
  require(nodes.size() == eG.size(), Errc::invalid_argument, "verify_gk: nodes and density differ in length");
  for (double v : eG)
    require(v > 0.0 && std::isfinite(v), Errc::invalid_argument, "verify_gk: e^G must be strictly positive and finite");
  const double a0 = alpha0(dim);
  const double alpha = options.alpha.value_or(0.5 * a0);
  require(alpha > 0.0 && alpha < a0, Errc::invalid_argument, "verify_gk: alpha must lie in (0, alpha0)");
  const double q = options.q;
  require(q > 1.0, Errc::invalid_argument, "verify_gk: q must be > 1");
  const int n = dim.n();
  const int k = dim.k();

  std::vector<double> f(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) f[i] = eG[i] * weight.value(std::log(eG[i]));
  const double N = RadialMeasure::from_density_values(dim, nodes, 0.0, f).total();
  for (double& v : f) v /= N;
  const auto psi1 = solve_dirichlet(RadialMeasure::from_density_values(dim, nodes, 0.0, std::move(f)), 0.0);
  const BarrierH h = orlicz_h(weight, k, N, q, alpha);

  const auto r = psi1.nodes();
  const auto s = log_of(r);
  const auto d1 = psi1.slope();
  const auto dd = numerics::derivative(s, std::vector<double>(d1.begin(), d1.end()));
  const double b1 = binomial(n - 1, k - 1);
  const double b2 = binomial(n - 1, k);
  const double c = alpha / q;

  GkReport rep;
  rep.N = N;
  rep.s0 = h.s0();
  rep.q = q;
  rep.alpha = alpha;
  rep.nodes.assign(r.begin(), r.end());
  rep.eG = eG;
  rep.psi1.assign(psi1.values().begin(), psi1.values().end());
  rep.psi.resize(r.size());
  rep.s_k_psi.resize(r.size());
  rep.F.resize(r.size());
  double worst = -kInf;
  double scale = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = -c * rep.psi1[i];
    const double second1 = dd[i] / r[i];
    const double hp = h.derivative(x);
    const double dpsi = c * hp * d1[i];
    const double d2psi = c * hp * second1 - c * c * h.second_derivative(x) * d1[i] * d1[i];
    const double qq = dpsi / r[i];
    rep.psi[i] = -h(x);
    rep.s_k_psi[i] = b1 * d2psi * std::pow(qq, k - 1) + b2 * std::pow(qq, k);
    rep.F[i] = std::min(std::exp(x), eG[i]);
    if (std::log(eG[i]) > x)
      ++rep.direct_branch;
    else
      ++rep.f_branch;
    worst = std::max(worst, eG[i] - rep.s_k_psi[i] - rep.F[i]);
    scale = std::max(scale, eG[i]);
  }
  const std::string inputs = fmt::format("n={} k={} R={:.6g} q={:.6g} alpha={:.6g} N={:.6g} direct={} f-branch={}", n,
                                         k, psi1.radius(), q, alpha, N, rep.direct_branch, rep.f_branch);
  rep.pointwise = make_record("gk/pointwise", "gk-inequality", inputs, worst / scale, 0.0, options.tolerance);
  const double E = exp_integral(psi1, alpha, beta0(dim)).value;
  const double bound = ball_volume(n, psi1.radius()) * a0 / (a0 - alpha);
  rep.exp_bound = make_record("gk/exp-psi1", "auxiliary-exp-bound", inputs, E, bound, 1e-9 * bound);
  return rep;
}

GkReport verify_gk(const HessianDim& dim, double R, const std::function<double(double)>& G,
                   const OrliczWeight& weight, const GkOptions& options, const GridSpec& grid) {
  auto nodes = geometric_grid(R, grid);
  std::vector<double> eG(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) eG[i] = std::exp(G(nodes[i]));
  return verify_gk(dim, std::move(nodes), std::move(eG), weight, options);
}

double orlicz_budget(const RadialMeasure& f, const OrliczWeight& weight) {
  const auto d = f.density();
  std::vector<double> g(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g[i] = d[i] > 0.0 ? d[i] * weight.value(std::log(d[i])) : 0.0;
  const double N = RadialMeasure::from_density_values(f.dim(), std::vector<double>(f.nodes().begin(), f.nodes().end()),
                                                      0.0, std::move(g))
                       .total();
  require(std::isfinite(N), Errc::invalid_argument, "abp: Orlicz budget is infinite");
  return N;
}

AbpMember abp_member(const AbpInput& input, const OrliczWeight& weight) {
  require(input.f.atom() == 0.0, Errc::invalid_argument, "abp: right-hand side must be a density");
  AbpMember m;
  m.id = input.id;
  m.group = input.group;
  m.budget = orlicz_budget(input.f, weight);
  const auto v = solve_dirichlet(input.f, 0.0);
  m.sup_u = -v.origin_value();
  const auto d = input.f.density();
  m.f_sup = d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
  return m;
}

AbpFit fit_abp_constants(const std::vector<AbpMember>& members, int k) {
  require(!members.empty(), Errc::invalid_argument, "abp fit: no calibration members");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(members.size());
  for (const auto& m : members) {
    const double x = std::pow(m.budget, 1.0 / k);
    sx += x;
    sy += m.sup_u;
    sxx += x * x;
    sxy += x * m.sup_u;
  }
  AbpFit fit;
  const double det = cnt * sxx - sx * sx;
  if (std::abs(det) <= 1e-12 * cnt * sxx) {
    fit.c2 = 0.0;
    fit.c1 = sy / cnt;
  } else {
    fit.c2 = (cnt * sxy - sx * sy) / det;
    fit.c1 = (sy - fit.c2 * sx) / cnt;
  }
  return fit;
}

std::vector<CheckRecord> abp_bound_check(const HessianDim& dim, const std::vector<AbpInput>& family,
                                         const OrliczWeight& weight, const AbpOptions& options) {
  require(dim.intermediate(), Errc::unsupported_dimension, "abp check requires k = n/2");
  require(family.size() >= 2, Errc::invalid_argument, "abp check: need at least two members");
  const auto members = parallel_map(family.size(), [&](std::size_t i) { return abp_member(family[i], weight); });
  std::vector<AbpMember> calibration;
  for (std::size_t i = 0; i < members.size(); i += 2) calibration.push_back(members[i]);
  const int k = dim.k();
  const AbpFit fit = fit_abp_constants(calibration, k);

  std::vector<CheckRecord> out;
  for (std::size_t i = 1; i < members.size(); i += 2) {
    const auto& m = members[i];
    const double bound = (1.0 + options.slack) * (fit.c1 + fit.c2 * std::pow(m.budget, 1.0 / k));
    out.push_back(make_record(fmt::format("abp/held-out/{}", m.id), "abp-estimate",
                              fmt::format("n={} k={} N={:.17g} c1={:.17g} c2={:.17g}", dim.n(), k, m.budget, fit.c1,
                                          fit.c2),
                              m.sup_u, bound));
  }
  std::map<int, std::vector<const AbpMember*>> groups;
  for (const auto& m : members) groups[m.group].push_back(&m);
  for (const auto& [g, list] : groups) {
    if (list.size() < 2) continue;
    double lo = kInf, hi = -kInf, flo = kInf, fhi = -kInf, nlo = kInf, nhi = -kInf;
    for (const auto* m : list) {
      lo = std::min(lo, m->sup_u);
      hi = std::max(hi, m->sup_u);
      flo = std::min(flo, m->f_sup);
      fhi = std::max(fhi, m->f_sup);
      nlo = std::min(nlo, m->budget);
      nhi = std::max(nhi, m->budget);
    }
    const std::string inputs =
        fmt::format("n={} k={} group={} members={} N=[{:.10g},{:.10g}]", dim.n(), k, g, list.size(), nlo, nhi);
    out.push_back(make_record(fmt::format("abp/group-{}/sup-u-spread", g), "abp-estimate", inputs,
                              (hi - lo) / lo, options.variation_limit));
    // Recorded as min_growth <= sup f growth.
    out.push_back(make_record(fmt::format("abp/group-{}/f-sup-growth", g), "abp-estimate", inputs, options.min_growth,
                              fhi / flo));
  }
  return out;
}

std::vector<AbpInput> mollified_dirac_family(const HessianDim& dim, double R, double f0,
                                             const std::vector<double>& extra_budgets,
                                             const std::vector<double>& eps, const GridSpec& grid) {
  require(f0 >= 0.0 && R > 0.0, Errc::invalid_argument, "mollified Dirac family: need f0 >= 0 and R > 0");
  const int n = dim.n();
  const double pi_n2 = std::pow(M_PI, 0.5 * n);
  const auto nodes = geometric_grid(R, grid);
  std::vector<AbpInput> out;
  int g = 0;
  for (double extra : extra_budgets) {
    require(extra > 0.0, Errc::invalid_argument, "mollified Dirac family: extra budget must be > 0");
    for (double e : eps) {
      require(e > 0.0 && e < R, Errc::invalid_argument, "mollified Dirac family: need 0 < eps < R");
      // int f^2 - f0^2 |B_R| = A1 a + A2 a^2 (Gaussian integrals over R^n; the tail beyond R is negligible).
      const double A1 = 2.0 * f0 * pi_n2;
      const double A2 = pi_n2 * std::pow(e, -n) * std::pow(2.0, -0.5 * n);
      const double a = 2.0 * extra / (A1 + std::sqrt(A1 * A1 + 4.0 * A2 * extra));
      const double peak = a * std::pow(e, -n);
      auto f = [=](double r) { return f0 + peak * std::exp(-(r * r) / (e * e)); };
      out.push_back({fmt::format("budget={:.6g}/eps={:.6g}", extra, e), g,
                     RadialMeasure::from_density(dim, nodes, 0.0, f)});
    }
    ++g;
  }
  return out;
}

std::vector<DeGiorgiSample> degiorgi_samples_from_abp(const HessianDim& dim, const RadialMeasure& f,
                                                      const OrliczWeight& weight, const GkOptions& options,
                                                      std::size_t count) {
  require(count >= 8, Errc::invalid_argument, "degiorgi samples: need count >= 8");
  const auto v = solve_dirichlet(f, 0.0);
  const auto d = f.density();
  std::vector<double> eG(d.begin(), d.end());
  const auto rep = verify_gk(dim, std::vector<double>(f.nodes().begin(), f.nodes().end()), eG, weight, options);
  const auto W = volume_weights(dim.n(), rep.nodes);
  std::vector<double> w(rep.nodes.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -v.values()[i] + rep.psi[i];
  const double top = *std::max_element(w.begin(), w.end());
  const double s0 = *std::min_element(w.begin(), w.end());
  const double span = top - s0;
  const double end = span > 0.0 ? top + 0.1 * span : s0 + 1.0;
  std::vector<DeGiorgiSample> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double s = s0 + (end - s0) * static_cast<double>(j) / static_cast<double>(count - 1);
    double phi = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] > s) phi += W[i] * rep.F[i];
    out.push_back({s, phi});
  }
  return out;
}

}  // namespace hlab
