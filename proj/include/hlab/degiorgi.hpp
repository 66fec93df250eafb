#pragma once

#include <span>
#include <vector>

#include "hlab/check.hpp"

namespace hlab {

/// s_inf = 2 C0 phi0^delta / (1 - 2^-delta) + s0.
double degiorgi_threshold(double C0, double delta, double phi0, double s0);

struct DeGiorgiSample {
  double s;
  double phi;
};

struct DeGiorgiData {
  std::vector<DeGiorgiSample> samples;
  double s0 = 0.0;
  double C0 = 0.0;
  double delta = 0.0;
  double s_inf = 0.0;
  /// First sampled level from which phi stays <= 1e-12 (+inf if never).
  double vanishing = 0.0;
  /// A finite C0 exists for some delta on the grid.
  bool fitted = false;
  /// phi <= 1e-12 at every sample with s >= s_inf.
  bool verified = false;
};

inline constexpr double kVanishTolerance = 1e-12;

/// Fits the minimal C0 with t phi(s+t) <= C0 phi(s)^{1+delta} on the step-function extension of
/// the samples, for delta in {0.1, ..., 2.0}, keeps the delta with the smallest s_inf and checks
/// that phi has vanished beyond it. s0 defaults to the first sample.
DeGiorgiData degiorgi_fit_and_verify(std::span<const DeGiorgiSample> samples);
DeGiorgiData degiorgi_fit_and_verify(std::span<const DeGiorgiSample> samples, double s0);

/// Vanishing level <= s_inf; a failed fit is recorded as a failing flag.
CheckRecord degiorgi_record(const DeGiorgiData& data, std::string id, std::string inputs);

}  // namespace hlab
