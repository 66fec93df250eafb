#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace hlab::fixtures {

inline constexpr std::size_t kMatrixCount = 50;

/// Fixed symmetric test matrix number i (i < kMatrixCount), size 2..6, entries in [-2, 2].
inline Eigen::MatrixXd symmetric_matrix(std::size_t i) {
  const int n = 2 + static_cast<int>(i % 5);
  Eigen::MatrixXd m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      const double x = std::sin(1.37 * (i + 1) * (a + 1) + 0.71 * (b + 1) + 0.13 * i) +
                       std::cos(0.59 * (i + 3) * (b + 1) - 0.29 * (a + 2));
      m(a, b) = m(b, a) = a == b ? x + 0.25 * static_cast<double>(i % 3) : x;
    }
  return m;
}

/// Spectra with known admissibility: max_k is the largest k with spectrum in Gamma_k (0 if none).
struct SpectrumFixture {
  std::vector<double> spectrum;
  int max_k;
};

inline std::vector<SpectrumFixture> spectrum_fixtures() {
  return {
      {{1.0, 1.0, 1.0}, 3},
      {{1.0, 1.0, -0.1}, 2},
      {{3.0, 2.0, -1.0}, 2},
      {{1.0, -0.5}, 1},
      {{-1.0, 0.5}, 0},
      {{2.0, 2.0, 2.0, -1.0}, 2},
      {{4.0, 1.0, 1.0, -0.5}, 2},
      {{1.0, 1.0, 1.0, 1.0, 1.0, -0.4}, 4},
      {{5.0, -1.0, -1.0, -1.0}, 1},
      {{0.0, 0.0, 0.0, 0.0}, 4},
  };
}

}  // namespace hlab::fixtures
