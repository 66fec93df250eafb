#include "hlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hlab/error.hpp"

namespace hlab {

std::vector<double> geometric_grid(double R, const GridSpec& spec) {
  require(R > 0.0 && std::isfinite(R), Errc::invalid_argument, "grid radius must be positive");
  require(spec.nodes >= 8, Errc::invalid_argument, "grid needs at least 8 nodes");
  require(spec.rmin_factor > 0.0 && spec.rmin_factor < 1.0, Errc::invalid_argument,
          "rmin factor must lie in (0,1)");
  const std::size_t N = spec.nodes;
  const double log_span = std::log(spec.rmin_factor);
  std::vector<double> r(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double frac = static_cast<double>(N - 1 - i) / static_cast<double>(N - 1);
    r[i] = R * std::exp(frac * log_span);
  }
  r.back() = R;
  return r;
}

namespace numerics {

double lagrange4(const double* x, const double* f, double t) {
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (t - x[b]) / (x[a] - x[b]);
    out += w * f[a];
  }
  return out;
}

std::vector<double> cumulative_integral(std::span<const double> x, std::span<const double> f) {
  require(x.size() == f.size() && x.size() >= 2, Errc::invalid_argument,
          "cumulative_integral: size mismatch or fewer than two nodes");
  const std::size_t N = x.size();
  std::vector<double> F(N, 0.0);
  if (N < 4) {
    for (std::size_t i = 0; i + 1 < N; ++i) F[i + 1] = F[i] + 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return F;
  }
  // Two-point Gauss-Legendre is exact for the local cubic interpolant.
  const double g = 0.5 / std::sqrt(3.0);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const std::size_t j0 = std::min(i == 0 ? 0 : i - 1, N - 4);
    const double h = x[i + 1] - x[i];
    const double mid = 0.5 * (x[i] + x[i + 1]);
    const double a = lagrange4(&x[j0], &f[j0], mid - g * h);
    const double b = lagrange4(&x[j0], &f[j0], mid + g * h);
    F[i + 1] = F[i] + 0.5 * h * (a + b);
  }
  return F;
}

double integrate(std::span<const double> x, std::span<const double> f) {
  return cumulative_integral(x, f).back();
}

std::vector<double> fornberg_weights(double x0, std::span<const double> stencil, int m) {
  const int n = static_cast<int>(stencil.size()) - 1;
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = stencil[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = stencil[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = stencil[i] - stencil[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> derivative(std::span<const double> x, std::span<const double> f) {
  require(x.size() == f.size() && x.size() >= 5, Errc::invalid_argument,
          "derivative: size mismatch or fewer than five nodes");
  const std::size_t N = x.size();
  std::vector<double> d(N);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t j0 = std::min(i < 2 ? 0 : i - 2, N - 5);
    const auto w = fornberg_weights(x[i], x.subspan(j0, 5), 1);
    double acc = 0.0;
    for (std::size_t a = 0; a < 5; ++a) acc += w[a] * f[j0 + a];
    d[i] = acc;
  }
  return d;
}

double hermite(double x0, double x1, double f0, double f1, double d0, double d1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * f1 +
         (t3 - t2) * h * d1;
}

std::size_t bracket(std::span<const double> x, double t) {
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  return std::min(i, x.size() - 2);
}

double integrate_half_line(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

double integrate_interval(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
}

double integrate_cell(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

}  // namespace numerics
}  // namespace hlab
