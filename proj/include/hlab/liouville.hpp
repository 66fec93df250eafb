#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hlab/check.hpp"
#include "hlab/radial.hpp"

namespace hlab {

/// S_k[u] = V e^{-u} on B_R, u = boundary on the sphere, k = n/2.
struct LiouvilleProblem {
  HessianDim dim{2, 1};
  double R = 1.0;
  std::function<double(double)> V = [](double) { return 1.0; };
  /// Integrability exponent of V in (1, inf]; +inf allowed.
  double p = std::numeric_limits<double>::infinity();
  double boundary = 0.0;
};

enum class LiouvilleMethod { shooting, picard };

struct LiouvilleOptions {
  LiouvilleMethod method = LiouvilleMethod::shooting;
  /// Shooting: starting central value u(0) (defaults to the boundary value, the low-mass branch).
  std::optional<double> central_guess;
  /// Picard: starting profile (defaults to the constant boundary value).
  std::optional<RadialProfile> initial;
  double tolerance = 1e-10;
  int max_iterations = 500;
  double residual_tolerance = 1e-6;
  GridSpec grid;
};

struct LiouvilleSolution {
  RadialProfile u;
  /// sup over nodes |m_u(r) - int_{B_r} V e^{-u}| / total mass.
  double residual = 0.0;
  double mass = 0.0;
  int iterations = 0;
};

/// Throws no-solution-found when the iteration does not converge or the residual is too large.
LiouvilleSolution solve_liouville(const LiouvilleProblem& prob, const LiouvilleOptions& options = {});

/// Radial solution with prescribed central value, integrated outward (k = n/2).
RadialProfile shoot_liouville(const LiouvilleProblem& prob, double central, const GridSpec& grid = {});

/// n = 2 bubble u = -log(8 lambda^2 / (1 + lambda^2 r^2)^2) solving Laplace u = e^{-u}.
double bubble_value(double lambda, double r);
double bubble_slope(double lambda, double r);
/// int_{B_R} e^{-u_lambda} dx = 8 pi lambda^2 R^2 / (1 + lambda^2 R^2).
double bubble_mass(double lambda, double R);

/// int_{B_r} V e^{-u} dx.
double local_mass(const RadialProfile& u, const std::function<double(double)>& V, double r);

/// ||V||_{L^p(B_R)}, p = inf allowed (grid supremum).
double potential_norm(const LiouvilleProblem& prob, const GridSpec& grid = {});

struct LiouvilleMember {
  LiouvilleProblem problem;
  RadialProfile u;
};
using SolutionSequence = std::vector<LiouvilleMember>;

/// A priori lower bound b - D for u when int V e^{-u} <= C0 < (alpha0/p')^k, from the sharp
/// exponential bound on u - b and Hoelder on B_r.
double smallness_depth_bound(const LiouvilleProblem& prob, double C0, const GridSpec& grid = {});

/// Checks inf_i min(u_i, 0) >= min_i (b_i - D_i). Throws precondition-violation when a member's
/// mass exceeds C0, invalid-argument when C0 is not below the threshold.
CheckRecord smallness_check(const SolutionSequence& seq, double C0);

struct Atom {
  double radius = 0.0;
  double mass = 0.0;
};
enum class PointLabel { regular, singular };
std::vector<PointLabel> regular_point_classify(const std::vector<Atom>& atoms, const HessianDim& dim,
                                               double p_conjugate);

enum class Alternative { bounded, uniform_divergence, concentration, inconclusive };
std::string_view to_string(Alternative a) noexcept;

struct BlowupReport {
  Alternative classification = Alternative::inconclusive;
  /// Blow-up radii (only the centre can occur).
  std::vector<double> blowup_set;
  std::vector<double> atom_masses;
  double threshold = 0.0;
  /// atom - threshold (1 - 1e-3) per atom.
  std::vector<double> margins;
  /// Diagnostics per member: min and max over the compact annulus, central value.
  std::vector<double> compact_min;
  std::vector<double> compact_max;
  std::vector<double> central;
};

/// Trichotomy from trend diagnostics on [R/4, 3R/4] and at the centre. Requires >= 4 members.
BlowupReport classify_alternative(const SolutionSequence& seq, double atom_radius_fraction = 0.1);

struct HarnackRecord {
  double sup = 0.0;
  double inf = 0.0;
  double ratio = 0.0;
  bool density_ok = false;
};

/// sup_{B_r}|u|, inf_{B_r}|u| and their ratio for u <= 0. Throws precondition-violation when
/// mu(B(x, s)) <= M s^{n-2k+eps} fails on the sampled balls (any atom violates it).
HarnackRecord harnack_ratio(const RadialProfile& u, double r, double M, double eps);

/// Solves S_k[z] = atom delta + f, z(R) = boundary, and records sup_{r < R/10} (z - (n/p') log r)
/// over the inner decades against the outer ones: the difference must stay bounded as r -> 0.
CheckRecord fundamental_comparison(const HessianDim& dim, double R, double atom,
                                   const std::function<double(double)>& density, double p_conjugate,
                                   double boundary, const GridSpec& grid = {});

}  // namespace hlab
