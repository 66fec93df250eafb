#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hlab/radial.hpp"

namespace hlab::oracle {

/// sigma_j by enumerating all j-element subsets (n <= 20).
double subset_elem_sym(std::span<const double> spectrum, int j);

/// Sum of all j x j principal minors.
double principal_minor_sum(const Eigen::MatrixXd& m, int j);

/// Full Hessian of U at x by central differences with step h.
Eigen::MatrixXd fd_hessian(const std::function<double(const Eigen::VectorXd&)>& U, const Eigen::VectorXd& x,
                           double h);

/// S_k of u(|x|) at x = r (1, 2, ..., n)/|(1, 2, ..., n)| from the finite-difference Hessian
/// (steps h and h/2 combined by Richardson extrapolation).
double radial_s_k_fd(const RadialProfile& u, double r, double h);

}  // namespace hlab::oracle
