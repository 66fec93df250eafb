#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hlab/check.hpp"
#include "hlab/degiorgi.hpp"
#include "hlab/orlicz.hpp"
#include "hlab/radial.hpp"

namespace hlab {

struct GkOptions {
  double q = 2.0;
  /// Defaults to alpha0/2.
  std::optional<double> alpha;
  double tolerance = 1e-6;
};

struct GkReport {
  /// max(e^G - S_k[psi] - F) / max e^G <= 0.
  CheckRecord pointwise;
  /// int exp(alpha (-psi1)) <= |B_R| alpha0/(alpha0 - alpha), psi1 of unit mass.
  CheckRecord exp_bound;
  std::size_t direct_branch = 0;  // nodes with G > -(alpha/q) psi1
  std::size_t f_branch = 0;       // nodes where e^G <= F already
  double N = 0.0;
  double s0 = 0.0;
  double q = 2.0;
  double alpha = 0.0;
  std::vector<double> nodes;
  std::vector<double> eG;
  std::vector<double> psi1;
  std::vector<double> psi;
  std::vector<double> s_k_psi;
  std::vector<double> F;
};

/// Builds psi1 (S_k[psi1] = e^G Phi(G)/N, zero on the boundary) and psi = -h(-(alpha/q) psi1) on
/// the nodes, then checks e^G <= S_k[psi] + min(exp(-(alpha/q) psi1), e^G) pointwise.
GkReport verify_gk(const HessianDim& dim, std::vector<double> nodes, std::vector<double> eG,
                   const OrliczWeight& weight, const GkOptions& options = {});
GkReport verify_gk(const HessianDim& dim, double R, const std::function<double(double)>& G,
                   const OrliczWeight& weight, const GkOptions& options = {}, const GridSpec& grid = {});

/// One right-hand side of the family: S_k[-u] = f on B_R, u = 0 on the boundary.
struct AbpInput {
  std::string id;
  /// Members sharing a group have the same Orlicz budget.
  int group = 0;
  RadialMeasure f;
};

struct AbpMember {
  std::string id;
  int group = 0;
  double sup_u = 0.0;
  double budget = 0.0;
  double f_sup = 0.0;
};

/// N = int_{f > 0} f Phi(log f) dx.
double orlicz_budget(const RadialMeasure& f, const OrliczWeight& weight);

/// sup u = -v(0) for the solution v of S_k[v] = f, v(R) = 0.
AbpMember abp_member(const AbpInput& input, const OrliczWeight& weight);

struct AbpOptions {
  double slack = 0.1;
  double variation_limit = 0.2;
  double min_growth = 1e3;
};

struct AbpFit {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Least squares sup u ~ c1 + c2 N^{1/k} over the given members.
AbpFit fit_abp_constants(const std::vector<AbpMember>& members, int k);

/// Fits (c1, c2) on even indices, checks sup u <= (1 + slack)(c1 + c2 N^{1/k}) on odd indices, and
/// for every group checks the relative spread of sup u and the growth of sup f.
std::vector<CheckRecord> abp_bound_check(const HessianDim& dim, const std::vector<AbpInput>& family,
                                         const OrliczWeight& weight, const AbpOptions& options = {});

/// Background f0 plus a mollified Dirac a eps^-n exp(-r^2/eps^2), with a chosen so that
/// int f^2 = f0^2 |B_R| + extra (the budget for Phi = e^t). One group per extra-budget level.
std::vector<AbpInput> mollified_dirac_family(const HessianDim& dim, double R, double f0,
                                             const std::vector<double>& extra_budgets,
                                             const std::vector<double>& eps, const GridSpec& grid = {});

/// phi(s) = int_{u + psi > s} F dx sampled on count levels from min(u + psi) past max(u + psi).
std::vector<DeGiorgiSample> degiorgi_samples_from_abp(const HessianDim& dim, const RadialMeasure& f,
                                                      const OrliczWeight& weight, const GkOptions& options = {},
                                                      std::size_t count = 200);

}  // namespace hlab
