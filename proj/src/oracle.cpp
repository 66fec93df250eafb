#include "hlab/oracle.hpp"

#include <cmath>

#include "hlab/core.hpp"
#include "hlab/error.hpp"

namespace hlab::oracle {

double subset_elem_sym(std::span<const double> spectrum, int j) {
  const int n = static_cast<int>(spectrum.size());
  require(j >= 0 && j <= n && n <= 20, Errc::invalid_argument, "subset_elem_sym: bad order");
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != j) continue;
    double prod = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= spectrum[i];
    sum += prod;
  }
  return sum;
}

double principal_minor_sum(const Eigen::MatrixXd& m, int j) {
  const int n = static_cast<int>(m.rows());
  require(j >= 0 && j <= n && n <= 20, Errc::invalid_argument, "principal_minor_sum: bad order");
  if (j == 0) return 1.0;
  double sum = 0.0;
  std::vector<int> idx;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != j) continue;
    idx.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Eigen::MatrixXd sub(j, j);
    for (int a = 0; a < j; ++a)
      for (int b = 0; b < j; ++b) sub(a, b) = m(idx[a], idx[b]);
    sum += sub.determinant();
  }
  return sum;
}

Eigen::MatrixXd fd_hessian(const std::function<double(const Eigen::VectorXd&)>& U, const Eigen::VectorXd& x,
                           double h) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd H(n, n);
  const double u0 = U(x);
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXd p = x, q = x;
    p(a) += h;
    q(a) -= h;
    H(a, a) = (U(p) - 2.0 * u0 + U(q)) / (h * h);
    for (int b = 0; b < a; ++b) {
      Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
      pp(a) += h, pp(b) += h;
      pm(a) += h, pm(b) -= h;
      mp(a) -= h, mp(b) += h;
      mm(a) -= h, mm(b) -= h;
      H(a, b) = H(b, a) = (U(pp) - U(pm) - U(mp) + U(mm)) / (4.0 * h * h);
    }
  }
  return H;
}

double radial_s_k_fd(const RadialProfile& u, double r, double h) {
  const int n = u.dim().n();
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = i + 1.0;
  x *= r / x.norm();
  auto U = [&u](const Eigen::VectorXd& y) { return u.value_at(y.norm()); };
  const Eigen::MatrixXd H = (4.0 * fd_hessian(U, x, 0.5 * h) - fd_hessian(U, x, h)) / 3.0;
  return principal_minor_sum(H, u.dim().k());
}

}  // namespace hlab::oracle
