#pragma once

#include <optional>
#include <vector>

#include "hlab/check.hpp"
#include "hlab/radial.hpp"

namespace hlab {

enum class BMBranch { lp, exp };

struct BMQuery {
  HessianDim dim{2, 1};
  BMBranch branch = BMBranch::exp;
  double p = 1.0;
  double lambda = 0.0;
  double beta = 1.0;
  double R = 1.0;
  FamilySpec family;
  std::size_t amplitudes = 8;
  /// Mollification levels (fractions of R) used when the family is mollified-log.
  std::vector<double> eps_levels{1e-1, 1e-2, 1e-3};
  GridSpec grid;
};

/// Profiles of the sweep: amplitudes x eps levels (eps only for mollified-log).
std::vector<RadialProfile> bm_family(const BMQuery& q);

/// ||u||_p / M_k^{1/k} (strong below the endpoint, weak quasinorm at p = kn/(n-2k)) for each
/// member, plus a "sup" record. Requires k < n/2.
std::vector<CheckRecord> bm_lp_check(const BMQuery& q);

/// E / (|B_R| alpha0/(alpha0-lambda)) for each member plus a "sup" record; on the log family
/// with beta = beta0 an equality record E = |B_R| alpha0/(alpha0-lambda) to 1e-6 is added.
std::vector<CheckRecord> bm_exp_check(const BMQuery& q);

/// Log family: closed form versus quadrature for lambda = alpha0 (1 - 2^-j), j = 1..10, and the
/// divergence flag at lambda = alpha0 (expected only for beta = beta0).
std::vector<CheckRecord> sharpness_probe(const HessianDim& dim, double beta, double R = 1.0,
                                         const GridSpec& grid = {});

}  // namespace hlab
