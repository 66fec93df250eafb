#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hlab {

/// Space dimension n and Hessian order k, 1 <= k <= n, n >= 2.
class HessianDim {
 public:
  HessianDim(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  /// True iff 2k = n, the borderline case with exponential integrability.
  bool intermediate() const noexcept { return 2 * k_ == n_; }
  /// True iff 2k < n.
  bool subcritical() const noexcept { return 2 * k_ < n_; }

  friend bool operator==(const HessianDim&, const HessianDim&) = default;

 private:
  int n_;
  int k_;
};

/// Volume of the unit ball in R^n; exact rational multiples of powers of pi for n <= 12.
double unit_ball_volume(int n);

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int j);

struct DerivedConstants {
  double omega_n;
  double binom_nk;
  double alpha0;
  std::optional<double> beta0;  // intermediate case only
};

DerivedConstants derived_constants(const HessianDim& dim);

/// alpha_0 = n [omega_n binom(n,k)]^{2/n}.
double alpha0(const HessianDim& dim);

/// beta_0 = (n+2)/n; unsupported-dimension unless intermediate.
double beta0(const HessianDim& dim);

/// Concentration quantum (alpha_0 / p')^k; unsupported-dimension unless intermediate.
double blowup_threshold(const HessianDim& dim, double p_conjugate);

/// Conjugate exponent p' = p/(p-1), with p = +inf giving exactly 1.
double conjugate_exponent(double p);

/// sigma_j of the spectrum via the coefficients of prod (t + lambda_i).
double elem_sym(std::span<const double> spectrum, int j);

/// sigma_0 .. sigma_{up_to} in one pass.
std::vector<double> elem_sym_all(std::span<const double> spectrum, int up_to);

/// sigma_j >= 0 for all j = 1..k of dim; spectrum length must equal n.
bool gamma_k_membership(std::span<const double> spectrum, const HessianDim& dim);

/// Same test with a relative slack: sigma_j >= -tol * (max|lambda|)^j binom(n,j).
bool gamma_k_membership(std::span<const double> spectrum, const HessianDim& dim, double tol);

/// Relative symmetry tolerance applied by s_k_of_matrix.
inline constexpr double kSymmetryTolerance = 1e-12;

/// sigma_k of the eigenvalues of a symmetric n x n matrix.
double s_k_of_matrix(const Eigen::MatrixXd& m, const HessianDim& dim);

/// Eigenvalues (ascending) of a symmetric matrix after the same symmetry validation.
std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m);

}  // namespace hlab
