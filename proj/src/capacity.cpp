#include "hlab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hlab/error.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const CapacityConfig& cfg) {
  require(cfg.R > 0.0 && cfg.rho > 0.0 && cfg.rho < cfg.R && std::isfinite(cfg.R), Errc::invalid_argument,
          "capacity: radii must satisfy 0 < rho < R");
  require(2 * cfg.dim.k() <= cfg.dim.n(), Errc::unsupported_dimension, "capacity: requires k <= n/2");
}

double mass_constant(const HessianDim& dim) { return unit_ball_volume(dim.n()) * binomial(dim.n(), dim.k()); }

}  // namespace

double cap_concentric(const CapacityConfig& cfg) {
  validate(cfg);
  const int n = cfg.dim.n();
  const int k = cfg.dim.k();
  const double c = mass_constant(cfg.dim);
  if (cfg.dim.intermediate()) {
    const double L = std::log(cfg.R / cfg.rho);
    return L > 0.0 ? c / std::pow(L, k) : kInf;
  }
  const double a = static_cast<double>(n - 2 * k) / k;
  const double D = std::pow(cfg.rho, -a) - std::pow(cfg.R, -a);
  return D > 0.0 ? c * std::pow(a, k) / std::pow(D, k) : kInf;
}

RadialProfile extremal_profile(const CapacityConfig& cfg, const GridSpec& grid) {
  validate(cfg);
  auto nodes = geometric_grid(cfg.R, grid);
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), cfg.rho);
  if (it == nodes.end() || std::abs(*it - cfg.rho) > 1e-14 * cfg.rho) {
    // Snap the nearest node onto rho so the kink sits on the grid.
    const auto nearest = (it != nodes.begin() && (it == nodes.end() || cfg.rho - *(it - 1) < *it - cfg.rho)) ? it - 1 : it;
    if (nearest != nodes.end() - 1 && nearest != nodes.begin())
      *nearest = cfg.rho;
    else
      nodes.insert(it, cfg.rho);
  }
  const int k = cfg.dim.k();
  const int n = cfg.dim.n();
  std::vector<double> values(nodes.size());
  std::vector<double> slope(nodes.size());
  const bool inter = cfg.dim.intermediate();
  const double a = static_cast<double>(n - 2 * k) / k;
  const double L = std::log(cfg.R / cfg.rho);
  const double D = inter ? 0.0 : std::pow(cfg.rho, -a) - std::pow(cfg.R, -a);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes[i];
    if (r < cfg.rho) {
      values[i] = -1.0;
      slope[i] = 0.0;
    } else if (inter) {
      values[i] = -std::log(cfg.R / r) / L;
      slope[i] = 1.0 / (r * L);
    } else {
      values[i] = -(std::pow(r, -a) - std::pow(cfg.R, -a)) / D;
      slope[i] = a * std::pow(r, -a - 1.0) / D;
    }
  }
  values.back() = 0.0;
  return RadialProfile(cfg.dim, cfg.R, 0.0, std::move(nodes), std::move(values), std::move(slope), 0.0);
}

double isocapacitary_ratio(const CapacityConfig& cfg, double exponent) {
  validate(cfg);
  const HessianDim& dim = cfg.dim;
  const int n = dim.n();
  const int k = dim.k();
  const double cap = cap_concentric(cfg);
  const double vol = ball_volume(n, cfg.rho);
  if (dim.intermediate()) {
    require(exponent >= 1.0 && exponent <= 1.0 + 1.0 / k + 1e-12, Errc::invalid_argument,
            "isocapacitary: beta must lie in [1, 1 + 1/k]");
    const double e = alpha0(dim) * std::pow(cap, -exponent / (k + 1.0));
    return std::exp(std::log(vol) + e - std::log(ball_volume(n, cfg.R)));
  }
  const double qmax = n * (k + 1.0) / (n - 2.0 * k);
  require(exponent >= 1.0 && exponent <= qmax * (1.0 + 1e-12), Errc::invalid_argument,
          "isocapacitary: q must lie in [1, n(k+1)/(n-2k)]");
  return vol / std::pow(cap, exponent / (k + 1.0));
}

CheckRecord isocapacitary_margin(const CapacityConfig& cfg, double exponent) {
  const double ratio = isocapacitary_ratio(cfg, exponent);
  return make_record(fmt::format("isocap/rho={:.6g}", cfg.rho), "isocapacitary",
                     fmt::format("n={} k={} R={:.6g} rho={:.6g} e={:.6g}", cfg.dim.n(), cfg.dim.k(), cfg.R, cfg.rho,
                                 exponent),
                     ratio, kInf);
}

std::vector<CheckRecord> isocapacitary_sweep(const HessianDim& dim, double R, std::span<const double> rhos,
                                             double exponent) {
  std::vector<CheckRecord> out;
  double sup = 0.0;
  for (double rho : rhos) {
    out.push_back(isocapacitary_margin({dim, rho, R}, exponent));
    sup = std::max(sup, out.back().lhs);
  }
  out.push_back(make_record("isocap/sup", "isocapacitary",
                            fmt::format("n={} k={} R={:.6g} e={:.6g} configs={}", dim.n(), dim.k(), R, exponent,
                                        rhos.size()),
                            sup, kInf));
  return out;
}

std::vector<double> levelset_cap_ratios(const RadialProfile& u, std::span<const double> ts) {
  require(std::abs(u.boundary()) <= 1e-12, Errc::invalid_argument, "levelset capacity: boundary value must be 0");
  const HessianDim& dim = u.dim();
  const double M = hessian_mass(u);
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) {
    const double rho = level_set_radius(u, t);
    double cap = 0.0;
    if (rho >= u.radius())
      cap = kInf;
    else if (rho > 0.0)
      cap = cap_concentric({dim, rho, u.radius()});
    const double bound = M / std::pow(t, dim.k());
    out.push_back(cap == 0.0 ? 0.0 : cap / bound);
  }
  return out;
}

CheckRecord levelset_cap_check(const RadialProfile& u, std::span<const double> ts, double tol) {
  const auto ratios = levelset_cap_ratios(u, ts);
  const double worst = ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
  return make_record("levelset-cap", "levelset-capacity",
                     fmt::format("n={} k={} R={:.6g} levels={}", u.dim().n(), u.dim().k(), u.radius(), ts.size()),
                     worst, 1.0, tol);
}

RadialSet sublevel_set(const RadialProfile& u, const RadialProfile& v) {
  require(u.dim().n() == v.dim().n() && u.dim().k() == v.dim().k(), Errc::invalid_argument,
          "comparison: profiles must share (n, k)");
  require(std::abs(u.radius() - v.radius()) <= 1e-12 * u.radius(), Errc::invalid_argument,
          "comparison: profiles must share R");
  const double R = u.radius();
  std::vector<double> xs(u.nodes().begin(), u.nodes().end());
  xs.insert(xs.end(), v.nodes().begin(), v.nodes().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  while (!xs.empty() && xs.back() > R) xs.pop_back();
  auto d = [&](double r) { return u.value_at(r) - v.value_at(r); };
  // Behaviour at the origin, read off far inside the core.
  const double r_in = 1e-6 * xs.front();
  const bool origin_in = d(r_in) < 0.0;
  auto boundary = [&](double lo, double hi) {
    const bool lo_neg = d(lo) < 0.0;
    while (hi - lo > 1e-10 * R) {
      const double mid = 0.5 * (lo + hi);
      if ((d(mid) < 0.0) == lo_neg)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  RadialSet set;
  bool inside = origin_in;
  double start = 0.0;
  double prev = r_in;
  for (double r : xs) {
    const bool neg = d(r) < 0.0;
    if (neg != inside) {
      const double edge = boundary(prev, r);
      if (neg)
        start = edge;
      else
        set.intervals.emplace_back(start, edge);
      inside = neg;
    }
    prev = r;
  }
  if (inside) set.intervals.emplace_back(start, R);
  return set;
}

double measure_of(const RadialProfile& u, const RadialSet& set) {
  double total = 0.0;
  for (const auto& [a, b] : set.intervals) {
    const double mb = u.cumulative_mass_at(std::min(b, u.radius()));
    const double ma = a > 0.0 ? u.cumulative_mass_at(a) : 0.0;
    total += std::max(mb - ma, 0.0);
  }
  return total;
}

CheckRecord comparison_check(const RadialProfile& u, const RadialProfile& v, double tol) {
  require(u.boundary() >= v.boundary() - 1e-12, Errc::precondition_violation, "comparison: needs u(R) >= v(R)");
  require(u.admissible() && v.admissible(), Errc::not_admissible, "comparison: profiles must have u' >= 0");
  const RadialSet set = sublevel_set(u, v);
  const double mu_u = measure_of(u, set);
  const double mu_v = measure_of(v, set);
  const double scale = std::max({hessian_mass(u), hessian_mass(v), 1e-300});
  // Recorded as mu_v <= mu_u.
  return make_record("comparison", "comparison-principle",
                     fmt::format("n={} k={} R={:.6g} intervals={}", u.dim().n(), u.dim().k(), u.radius(),
                                 set.intervals.size()),
                     mu_v, mu_u, tol * scale);
}

}  // namespace hlab
