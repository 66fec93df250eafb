#pragma once

#include <string_view>
#include <vector>

namespace hlab {

/// Positive nondecreasing weight Phi on the real line.
///   exponential     e^{delta t}
///   power-shifted   (1 + max(t, 0))^m
///   tabulated       piecewise linear through (t_i, Phi_i), constant to the left, continued
///                   exponentially to the right with the log-slope of the last segment
class OrliczWeight {
 public:
  enum class Kind { exponential, power_shifted, tabulated };

  static OrliczWeight exponential(double delta);
  static OrliczWeight power_shifted(double m);
  static OrliczWeight tabulated(std::vector<double> t, std::vector<double> phi);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  double value(double t) const;

  /// int_s^inf Phi^{-1/k}(t) dt; +inf when it diverges.
  double tail(double s, int k) const;
  /// Lambda = int_0^inf Phi^{-1/k}(t) dt.
  double lambda(int k) const { return tail(0.0, k); }

 private:
  OrliczWeight() = default;
  Kind kind_ = Kind::exponential;
  double param_ = 0.0;
  std::vector<double> t_;
  std::vector<double> phi_;
  double tail_rate_ = 0.0;
};

std::string_view to_string(OrliczWeight::Kind kind) noexcept;

/// h(s) = -int_s^inf (q/alpha) N^{1/k} Phi^{-1/k}(t) dt, concave and increasing.
class BarrierH {
 public:
  BarrierH(OrliczWeight weight, int k, double N, double q, double alpha);

  double operator()(double s) const;
  double derivative(double s) const;
  double second_derivative(double s) const;
  /// s0 = -h(0).
  double s0() const { return -(*this)(0.0); }
  /// (q/alpha) N^{1/k} Lambda, the upper bound for s0.
  double s0_bound() const { return scale_ * weight_.lambda(k_); }

  const OrliczWeight& weight() const noexcept { return weight_; }

 private:
  OrliczWeight weight_;
  int k_;
  double scale_;
};

/// Throws invalid-weight if Lambda is infinite.
BarrierH orlicz_h(const OrliczWeight& weight, int k, double N, double q, double alpha);

/// epsilon = ((k+1)/k)^{k/(k+1)} A^{1/(k+1)}.
double barrier_epsilon(double A, int k);

}  // namespace hlab
