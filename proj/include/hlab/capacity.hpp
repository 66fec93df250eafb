#pragma once

#include <span>
#include <vector>

#include "hlab/check.hpp"
#include "hlab/radial.hpp"

namespace hlab {

/// Condenser (closed ball B_rho, open ball B_R), 0 < rho < R.
struct CapacityConfig {
  HessianDim dim;
  double rho = 0.5;
  double R = 1.0;
};

/// Cap_k of the concentric condenser, from the S_k-harmonic annulus solution. Requires k <= n/2.
double cap_concentric(const CapacityConfig& cfg);

/// Relative extremal: -1 on [0, rho], 0 at R, S_k-harmonic on the annulus. rho is a grid node.
RadialProfile extremal_profile(const CapacityConfig& cfg, const GridSpec& grid = {});

/// |B_rho| / Cap^{q/(k+1)} for k < n/2, or |B_rho| exp(alpha0 Cap^{-beta/(k+1)}) / |B_R| for k = n/2.
double isocapacitary_ratio(const CapacityConfig& cfg, double exponent);

/// The ratio above as a boundedness record (rhs = +inf).
CheckRecord isocapacitary_margin(const CapacityConfig& cfg, double exponent);

/// One record per rho in the sweep plus a final "sup" record carrying the observed supremum.
std::vector<CheckRecord> isocapacitary_sweep(const HessianDim& dim, double R, std::span<const double> rhos,
                                             double exponent);

/// Cap_k(K_t, B_R) / (M_k(u)/t^k) for each t; 0 where K_t is empty.
std::vector<double> levelset_cap_ratios(const RadialProfile& u, std::span<const double> ts);

/// Passes iff every ratio is <= 1 + tol; lhs is the maximum ratio.
CheckRecord levelset_cap_check(const RadialProfile& u, std::span<const double> ts, double tol = 1e-8);

/// Open radial intervals (a, b) where u < v; a = 0 means the set contains the origin.
struct RadialSet {
  std::vector<std::pair<double, double>> intervals;
};
RadialSet sublevel_set(const RadialProfile& u, const RadialProfile& v);

/// mu measure of a radial open set, by differencing cumulative mass at interval ends.
double measure_of(const RadialProfile& u, const RadialSet& set);

/// mu_k[u]({u < v}) >= mu_k[v]({u < v}) - tol * max mass.
CheckRecord comparison_check(const RadialProfile& u, const RadialProfile& v, double tol = 1e-6);

}  // namespace hlab
