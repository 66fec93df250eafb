#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hlab/core.hpp"
#include "hlab/family.hpp"
#include "hlab/numerics.hpp"

namespace hlab {

/// |B_r| in R^n.
double ball_volume(int n, double r);

/// Radial k-convex profile u(r) on (0, R], sampled on a strictly increasing grid ending at R.
///
/// The grid never reaches the origin. Below the first node r_0 the profile is continued by a
/// core model: when the cumulative Hessian mass has an atom at the origin the slope follows
/// the fundamental-solution law u' = A r^{(k-n)/k}, otherwise u' grows linearly from 0.
/// Profiles generated from a canonical family keep the closed form for exact evaluation.
class RadialProfile {
 public:
  RadialProfile(HessianDim dim, double R, double boundary, std::vector<double> nodes,
                std::vector<double> values, std::vector<double> slope,
                std::optional<double> atom = std::nullopt);

  const HessianDim& dim() const noexcept { return dim_; }
  double radius() const noexcept { return R_; }
  double boundary() const noexcept { return boundary_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> slope() const noexcept { return slope_; }
  double atom() const noexcept { return atom_; }
  const std::optional<CanonicalForm>& canonical() const noexcept { return canonical_; }

  /// u -> -inf at the origin (an atom with 2k <= n).
  bool unbounded_origin() const noexcept;
  /// u' >= 0 at every node.
  bool admissible() const noexcept;

  RadialProfile with_canonical(const CanonicalForm& form) const;
  /// Same samples with the closed form dropped, forcing the generic numerical routes.
  RadialProfile without_canonical() const;
  /// c u for c > 0.
  RadialProfile scaled(double c) const;

  double value_at(double r) const;
  double slope_at(double r) const;
  /// u(0), -inf for unbounded profiles.
  double origin_value() const;

  /// m(r_i) = omega_n binom(n,k) r^{n-k} u'(r_i)^k, the Hessian mass of B_{r_i}.
  std::vector<double> cumulative_mass() const;
  double cumulative_mass_at(double r) const;

  /// Core model below r_0: u(r_0 e^{-tau}) = u(r_0) - drop(tau).
  double core_drop(double tau) const;
  /// log(drop(tau)), stable for large tau; -inf when the drop vanishes.
  double core_log_drop(double tau) const;
  /// Coefficient A of the singular slope A r^{(k-n)/k} (0 without atom).
  double core_coefficient() const;

 private:
  HessianDim dim_;
  double R_;
  double boundary_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> slope_;
  double atom_ = 0.0;
  std::optional<CanonicalForm> canonical_;
};

/// Radial k-Hessian measure: atom at the origin plus a density, with cumulative
/// m(r) = atom + n omega_n int_0^r f(s) s^{n-1} ds sampled on the nodes.
class RadialMeasure {
 public:
  RadialMeasure(HessianDim dim, std::vector<double> nodes, double atom, std::vector<double> density,
                std::vector<double> cumulative);

  static RadialMeasure from_density(const HessianDim& dim, std::vector<double> nodes, double atom,
                                    const std::function<double(double)>& density);
  static RadialMeasure from_density_values(const HessianDim& dim, std::vector<double> nodes, double atom,
                                           std::vector<double> density);
  static RadialMeasure dirac(const HessianDim& dim, std::vector<double> nodes, double atom);

  const HessianDim& dim() const noexcept { return dim_; }
  double radius() const noexcept { return nodes_.back(); }
  double atom() const noexcept { return atom_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> density() const noexcept { return density_; }
  std::span<const double> cumulative() const noexcept { return cumulative_; }
  double total() const noexcept { return cumulative_.back(); }

 private:
  HessianDim dim_;
  std::vector<double> nodes_;
  double atom_;
  std::vector<double> density_;
  std::vector<double> cumulative_;
};

/// Radial k-Hessian measure of u; not-admissible if u' < 0 anywhere.
RadialMeasure s_k_radial(const RadialProfile& u);

/// Radial solution of S_k[u] = mu on B_R with u(R) = boundary.
RadialProfile solve_dirichlet(const RadialMeasure& mu, double boundary);

/// M_k(u) = mu_k[u](B_R).
double hessian_mass(const RadialProfile& u);

/// I_k(u) = int (-u) dmu_k[u]; +inf when an atom sits where u = -inf.
double hessian_integral(const RadialProfile& u);

/// I_k(u)^{1/(k+1)}.
double phi_norm(const RadialProfile& u);

/// rho_t with {u < -t} = B_{rho_t}.
double level_set_radius(const RadialProfile& u, double t);

/// |{u < -t}|.
double level_set_volume(const RadialProfile& u, double t);

/// ||u||_{L^p(B_R)}; +inf when the core singularity is not p-integrable.
double lp_norm(const RadialProfile& u, double p);

/// sup_t t |{u < -t}|^{1/p}, including the t -> inf limit of the core model.
double weak_lp_quasinorm(const RadialProfile& u, double p);

struct ExpIntegral {
  double value = 0.0;
  bool divergent = false;
  /// Growth rate of the integrand in tau = log(r_0/r) at the origin; divergence iff >= 0.
  double local_exponent = 0.0;
};

struct ExpIntegralOptions {
  bool use_closed_form = true;
};

/// int_{B_R} exp( lambda ((-u)/M_k^{1/k})^{k beta/(k+1)} ) dx, intermediate case only.
ExpIntegral exp_integral(const RadialProfile& u, double lambda, double beta,
                         const ExpIntegralOptions& options = {});

/// One canonical family member on a geometric grid.
RadialProfile make_profile(const HessianDim& dim, double R, const FamilySpec& spec, const GridSpec& grid = {});

/// count members with amplitudes amplitude * 2^{j - (count-1)/2}.
std::vector<RadialProfile> make_family(const HessianDim& dim, double R, const FamilySpec& spec,
                                       std::size_t count, const GridSpec& grid = {});

/// Profile sampled from analytic value and slope functions, without closed-form tagging.
RadialProfile sample_profile(const HessianDim& dim, std::vector<double> nodes,
                             const std::function<double(double)>& value,
                             const std::function<double(double)>& slope);

}  // namespace hlab
