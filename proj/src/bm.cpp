#include "hlab/bm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hlab/error.hpp"
#include "hlab/parallel.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string member_id(const FamilySpec& s) {
  if (s.kind == FamilyKind::mollified_log) return fmt::format("{}/c={:.6g}/eps={:.3g}", to_string(s.kind), s.amplitude, s.eps);
  return fmt::format("{}/c={:.6g}", to_string(s.kind), s.amplitude);
}

std::vector<FamilySpec> member_specs(const BMQuery& q) {
  require(q.family.amplitude != 0.0, Errc::degenerate_profile, "bm: amplitude 0 gives u = 0 with zero Hessian mass");
  std::vector<FamilySpec> out;
  const auto n = q.amplitudes;
  std::vector<double> eps{q.family.eps};
  if (q.family.kind == FamilyKind::mollified_log) {
    eps.clear();
    for (double e : q.eps_levels) eps.push_back(e * q.R);
  }
  for (double e : eps)
    for (std::size_t j = 0; j < n; ++j) {
      FamilySpec s = q.family;
      s.eps = e;
      s.amplitude = q.family.amplitude * std::pow(2.0, static_cast<double>(j) - 0.5 * static_cast<double>(n - 1));
      out.push_back(s);
    }
  return out;
}

}  // namespace

std::vector<RadialProfile> bm_family(const BMQuery& q) {
  require(q.amplitudes >= 1, Errc::invalid_argument, "bm: need at least one amplitude");
  const auto specs = member_specs(q);
  return parallel_map(specs.size(), [&](std::size_t i) { return make_profile(q.dim, q.R, specs[i], q.grid); });
}

std::vector<CheckRecord> bm_lp_check(const BMQuery& q) {
  const int n = q.dim.n();
  const int k = q.dim.k();
  require(2 * k < n, Errc::unsupported_dimension, "bm lp branch requires k < n/2 (use the exp branch)");
  require(q.p >= 1.0, Errc::invalid_argument, "bm lp branch: p must be >= 1");
  const double endpoint = static_cast<double>(k) * n / (n - 2.0 * k);
  require(q.p <= endpoint * (1.0 + 1e-12), Errc::out_of_range, "bm lp branch: p exceeds kn/(n-2k)");
  const bool weak = std::abs(q.p - endpoint) <= 1e-12 * endpoint;
  const auto specs = member_specs(q);
  const auto ratios = parallel_map(specs.size(), [&](std::size_t i) {
    const auto u = make_profile(q.dim, q.R, specs[i], q.grid);
    const double M = hessian_mass(u);
    require(M > 0.0, Errc::degenerate_profile, "bm: Hessian mass is zero");
    const double norm = weak ? weak_lp_quasinorm(u, q.p) : lp_norm(u, q.p);
    return norm / std::pow(M, 1.0 / k);
  });
  const std::string anchor = weak ? "brezis-merle-weak-lp" : "brezis-merle-lp";
  const std::string inputs = fmt::format("n={} k={} R={:.6g} p={:.6g}", n, k, q.R, q.p);
  std::vector<CheckRecord> out;
  double sup = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out.push_back(make_record(fmt::format("{}/{}", weak ? "weak-lp" : "lp", member_id(specs[i])), anchor, inputs,
                              ratios[i], kInf));
    sup = std::max(sup, ratios[i]);
  }
  out.push_back(make_record(fmt::format("{}/sup/{}", weak ? "weak-lp" : "lp", to_string(q.family.kind)), anchor,
                            inputs, sup, kInf));
  return out;
}

std::vector<CheckRecord> bm_exp_check(const BMQuery& q) {
  const HessianDim& dim = q.dim;
  require(dim.intermediate(), Errc::unsupported_dimension, "bm exp branch requires k = n/2");
  const double a0 = alpha0(dim);
  require(q.lambda > 0.0, Errc::invalid_argument, "bm exp branch: lambda must be > 0");
  require(q.lambda < a0, Errc::out_of_range, "bm exp branch: lambda must be < alpha0 (use the sharpness probe)");
  const double b0 = beta0(dim);
  require(q.beta >= 1.0 && q.beta <= b0 + 1e-12, Errc::invalid_argument, "bm exp branch: beta must lie in [1, beta0]");
  const double shape = ball_volume(dim.n(), q.R) * a0 / (a0 - q.lambda);
  const auto specs = member_specs(q);
  const auto values = parallel_map(specs.size(), [&](std::size_t i) {
    const auto u = make_profile(dim, q.R, specs[i], q.grid);
    return exp_integral(u, q.lambda, q.beta).value;
  });
  const std::string inputs =
      fmt::format("n={} k={} R={:.6g} lambda={:.17g} beta={:.17g}", dim.n(), dim.k(), q.R, q.lambda, q.beta);
  const bool saturating = q.family.kind == FamilyKind::log && std::abs(q.beta - b0) <= 1e-12;
  std::vector<CheckRecord> out;
  double sup = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const double ratio = values[i] / shape;
    out.push_back(make_record(fmt::format("exp/{}", member_id(specs[i])), "brezis-merle-exp", inputs, ratio, kInf));
    if (saturating)
      out.push_back(make_equality(fmt::format("exp-sharp/{}", member_id(specs[i])), "brezis-merle-exp", inputs,
                                  values[i], shape, 1e-6));
    sup = std::max(sup, ratio);
  }
  out.push_back(make_record(fmt::format("exp/sup/{}", to_string(q.family.kind)), "brezis-merle-exp", inputs, sup, kInf));
  return out;
}

std::vector<CheckRecord> sharpness_probe(const HessianDim& dim, double beta, double R, const GridSpec& grid) {
  require(dim.intermediate(), Errc::unsupported_dimension, "sharpness probe requires k = n/2");
  const double a0 = alpha0(dim);
  const double b0 = beta0(dim);
  require(beta >= 1.0 && beta <= b0 + 1e-12, Errc::invalid_argument, "sharpness probe: beta must lie in [1, beta0]");
  const bool critical = std::abs(beta - b0) <= 1e-12;
  FamilySpec log_spec;
  log_spec.kind = FamilyKind::log;
  const auto u = make_profile(dim, R, log_spec, grid);
  const auto generic = u.without_canonical();
  std::vector<CheckRecord> out;
  bool finite_below = true;
  for (int j = 1; j <= 10; ++j) {
    const double lambda = a0 * (1.0 - std::ldexp(1.0, -j));
    const auto closed = exp_integral(u, lambda, beta);
    const auto quad = exp_integral(generic, lambda, beta);
    finite_below = finite_below && !closed.divergent && !quad.divergent && std::isfinite(closed.value);
    const std::string inputs =
        fmt::format("n={} k={} R={:.6g} beta={:.17g} lambda=alpha0*(1-2^-{})", dim.n(), dim.k(), R, beta, j);
    out.push_back(make_equality(fmt::format("sharpness/j={:02d}", j), "brezis-merle-sharpness", inputs, quad.value,
                                closed.value, critical ? 1e-6 : 1e-4));
  }
  const auto at = exp_integral(u, a0, beta);
  const auto at_generic = exp_integral(generic, a0, beta);
  // The boundary sits exactly at alpha0 when beta = beta0; below beta0 the integral stays finite there.
  const bool boundary_ok = critical ? (at.divergent && at_generic.divergent && finite_below)
                                    : (!at.divergent && std::isfinite(at.value) && finite_below);
  out.push_back(make_flag("sharpness/boundary", "brezis-merle-sharpness",
                          fmt::format("n={} k={} R={:.6g} beta={:.17g} local-exponent={:.6g}", dim.n(), dim.k(), R,
                                      beta, at_generic.local_exponent),
                          boundary_ok));
  return out;
}

}  // namespace hlab
