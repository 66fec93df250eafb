#include "hlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hlab/error.hpp"

namespace hlab {

HessianDim::HessianDim(int n, int k) : n_(n), k_(k) {
  require(n >= 2, Errc::invalid_argument, "space dimension n must be >= 2, got " + std::to_string(n));
  require(k >= 1 && k <= n, Errc::invalid_argument,
          "Hessian order must satisfy 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
}

double unit_ball_volume(int n) {
  require(n >= 1, Errc::invalid_argument, "unit_ball_volume: n must be >= 1");
  constexpr double pi = std::numbers::pi;
  if (n <= 12) {
    // n = 2m: pi^m / m!;  n = 2m+1: 2^{m+1} pi^m / n!!
    const int m = n / 2;
    double pi_pow = 1.0;
    for (int i = 0; i < m; ++i) pi_pow *= pi;
    if (n % 2 == 0) {
      long long fact = 1;
      for (int i = 2; i <= m; ++i) fact *= i;
      return pi_pow / static_cast<double>(fact);
    }
    long long dfact = 1;
    for (int i = n; i > 1; i -= 2) dfact *= i;
    return static_cast<double>(1LL << (m + 1)) * pi_pow / static_cast<double>(dfact);
  }
  return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double binomial(int n, int j) {
  if (j < 0 || j > n) return 0.0;
  j = std::min(j, n - j);
  double out = 1.0;
  for (int i = 1; i <= j; ++i) out = out * (n - j + i) / i;
  return std::round(out);
}

double alpha0(const HessianDim& dim) {
  const int n = dim.n();
  return n * std::pow(unit_ball_volume(n) * binomial(n, dim.k()), 2.0 / n);
}

double beta0(const HessianDim& dim) {
  require(dim.intermediate(), Errc::unsupported_dimension, "beta_0 is defined only for k = n/2");
  return (dim.n() + 2.0) / dim.n();
}

DerivedConstants derived_constants(const HessianDim& dim) {
  DerivedConstants c{unit_ball_volume(dim.n()), binomial(dim.n(), dim.k()), alpha0(dim), std::nullopt};
  if (dim.intermediate()) c.beta0 = beta0(dim);
  return c;
}

double conjugate_exponent(double p) {
  require(p > 1.0, Errc::invalid_argument, "conjugate exponent needs p > 1");
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double blowup_threshold(const HessianDim& dim, double p_conjugate) {
  require(dim.intermediate(), Errc::unsupported_dimension, "the concentration threshold needs k = n/2");
  require(p_conjugate >= 1.0, Errc::invalid_argument, "p' must be >= 1");
  return std::pow(alpha0(dim) / p_conjugate, dim.k());
}

std::vector<double> elem_sym_all(std::span<const double> spectrum, int up_to) {
  const int n = static_cast<int>(spectrum.size());
  require(up_to >= 0 && up_to <= n, Errc::invalid_argument,
          "elementary symmetric order out of range: " + std::to_string(up_to));
  std::vector<double> e(static_cast<std::size_t>(up_to) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double lam = spectrum[static_cast<std::size_t>(i)];
    for (int j = std::min(i + 1, up_to); j >= 1; --j) e[j] += lam * e[j - 1];
  }
  return e;
}

double elem_sym(std::span<const double> spectrum, int j) {
  require(j >= 0 && j <= static_cast<int>(spectrum.size()), Errc::invalid_argument,
          "elementary symmetric order out of range: " + std::to_string(j));
  return elem_sym_all(spectrum, j)[static_cast<std::size_t>(j)];
}

bool gamma_k_membership(std::span<const double> spectrum, const HessianDim& dim) {
  return gamma_k_membership(spectrum, dim, 0.0);
}

bool gamma_k_membership(std::span<const double> spectrum, const HessianDim& dim, double tol) {
  require(static_cast<int>(spectrum.size()) == dim.n(), Errc::invalid_argument,
          "spectrum length must equal n");
  double scale = 0.0;
  for (double v : spectrum) scale = std::max(scale, std::abs(v));
  const auto e = elem_sym_all(spectrum, dim.k());
  double scale_pow = 1.0;
  for (int j = 1; j <= dim.k(); ++j) {
    scale_pow *= scale;
    if (e[j] < -tol * scale_pow * binomial(dim.n(), j)) return false;
  }
  return true;
}

namespace {

void validate_symmetric(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols() && m.rows() > 0, Errc::invalid_argument, "matrix must be square and non-empty");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  require(asym <= kSymmetryTolerance * scale, Errc::invalid_argument,
          "matrix is not symmetric within tolerance");
}

}  // namespace

std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m) {
  validate_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, Errc::invalid_argument, "eigenvalue solver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double s_k_of_matrix(const Eigen::MatrixXd& m, const HessianDim& dim) {
  require(m.rows() == dim.n(), Errc::invalid_argument, "matrix size must equal n");
  const auto spectrum = symmetric_spectrum(m);
  return elem_sym(spectrum, dim.k());
}

}  // namespace hlab
