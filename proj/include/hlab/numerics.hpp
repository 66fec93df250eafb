#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hlab {

/// Geometric radial grid r_i = R g^{N-1-i}, from r_min = rmin_factor * R up to R.
struct GridSpec {
  std::size_t nodes = 2048;
  double rmin_factor = 1e-8;
};

std::vector<double> geometric_grid(double R, const GridSpec& spec = {});

namespace numerics {

/// F(x_i) = int_{x_0}^{x_i} f, piecewise-cubic Lagrange rule on a nonuniform grid.
std::vector<double> cumulative_integral(std::span<const double> x, std::span<const double> f);

double integrate(std::span<const double> x, std::span<const double> f);

/// df/dx at every node from 5-point finite-difference stencils (Fornberg weights).
std::vector<double> derivative(std::span<const double> x, std::span<const double> f);

/// Finite-difference weights for the m-th derivative at x0 over the given stencil.
std::vector<double> fornberg_weights(double x0, std::span<const double> stencil, int m);

/// Cubic Hermite interpolation on [x0, x1].
double hermite(double x0, double x1, double f0, double f1, double d0, double d1, double x);

/// Cubic Lagrange interpolation through four nodes.
double lagrange4(const double* x, const double* f, double t);

/// Index i with x[i] <= t < x[i+1], clamped to [0, size-2].
std::size_t bracket(std::span<const double> x, double t);

/// int_0^inf f(tau) dtau for smooth, decaying integrands (double-exponential rule).
double integrate_half_line(const std::function<double(double)>& f);

/// int_a^b f for smooth integrands (adaptive Gauss-Kronrod).
double integrate_interval(const std::function<double(double)>& f, double a, double b);

/// int_a^b f by a fixed 20-point Gauss-Legendre rule, for short intervals where f is a polynomial-like piece.
double integrate_cell(const std::function<double(double)>& f, double a, double b);

}  // namespace numerics
}  // namespace hlab
