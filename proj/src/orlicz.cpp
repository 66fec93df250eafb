#include "hlab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hlab/error.hpp"
#include "hlab/numerics.hpp"

namespace hlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

OrliczWeight OrliczWeight::exponential(double delta) {
  require(delta >= 0.0 && std::isfinite(delta), Errc::invalid_weight, "exponential weight needs delta >= 0");
  OrliczWeight w;
  w.kind_ = Kind::exponential;
  w.param_ = delta;
  return w;
}

OrliczWeight OrliczWeight::power_shifted(double m) {
  require(m >= 0.0 && std::isfinite(m), Errc::invalid_weight, "power-shifted weight needs m >= 0");
  OrliczWeight w;
  w.kind_ = Kind::power_shifted;
  w.param_ = m;
  return w;
}

OrliczWeight OrliczWeight::tabulated(std::vector<double> t, std::vector<double> phi) {
  require(t.size() >= 2 && t.size() == phi.size(), Errc::invalid_weight, "tabulated weight needs >= 2 matching samples");
  for (std::size_t i = 0; i < t.size(); ++i) {
    require(phi[i] > 0.0 && std::isfinite(phi[i]), Errc::invalid_weight, "tabulated weight must be positive");
    if (i > 0) {
      require(t[i] > t[i - 1], Errc::invalid_weight, "tabulated nodes must increase");
      require(phi[i] >= phi[i - 1], Errc::invalid_weight, "tabulated weight must be nondecreasing");
    }
  }
  OrliczWeight w;
  w.kind_ = Kind::tabulated;
  const std::size_t n = t.size();
  w.tail_rate_ = std::log(phi[n - 1] / phi[n - 2]) / (t[n - 1] - t[n - 2]);
  w.t_ = std::move(t);
  w.phi_ = std::move(phi);
  return w;
}

double OrliczWeight::value(double t) const {
  switch (kind_) {
    case Kind::exponential: return std::exp(param_ * t);
    case Kind::power_shifted: return std::pow(1.0 + std::max(t, 0.0), param_);
    case Kind::tabulated: {
      if (t <= t_.front()) return phi_.front();
      if (t >= t_.back()) return phi_.back() * std::exp(tail_rate_ * (t - t_.back()));
      const std::size_t i = numerics::bracket(t_, t);
      const double w = (t - t_[i]) / (t_[i + 1] - t_[i]);
      return (1.0 - w) * phi_[i] + w * phi_[i + 1];
    }
  }
  return 0.0;
}

double OrliczWeight::tail(double s, int k) const {
  require(k >= 1, Errc::invalid_argument, "weight tail needs k >= 1");
  const double kk = k;
  switch (kind_) {
    case Kind::exponential:
      if (param_ <= 0.0) return kInf;
      return kk / param_ * std::exp(-param_ * s / kk);
    case Kind::power_shifted: {
      if (param_ <= kk) return kInf;
      const double a = param_ / kk - 1.0;
      if (s >= 0.0) return std::pow(1.0 + s, -a) / a;
      return -s + 1.0 / a;
    }
    case Kind::tabulated: {
      if (tail_rate_ <= 0.0) return kInf;
      auto f = [&](double t) { return std::pow(value(t), -1.0 / kk); };
      const double end = t_.back();
      double total = 0.0;
      if (s < t_.front()) {
        total += (t_.front() - s) * std::pow(phi_.front(), -1.0 / kk);
        s = t_.front();
      }
      if (s < end) {
        std::size_t i = numerics::bracket(t_, s);
        double a = s;
        for (; i + 1 < t_.size(); ++i) {
          const double b = t_[i + 1];
          if (b > a) total += numerics::integrate_interval(f, a, b);
          a = b;
        }
        s = end;
      }
      return total + kk / tail_rate_ * std::pow(value(s), -1.0 / kk);
    }
  }
  return kInf;
}

std::string_view to_string(OrliczWeight::Kind kind) noexcept {
  switch (kind) {
    case OrliczWeight::Kind::exponential: return "exponential";
    case OrliczWeight::Kind::power_shifted: return "power-shifted";
    case OrliczWeight::Kind::tabulated: return "tabulated";
  }
  return "unknown";
}

BarrierH::BarrierH(OrliczWeight weight, int k, double N, double q, double alpha)
    : weight_(std::move(weight)), k_(k), scale_(q / alpha * std::pow(N, 1.0 / k)) {}

double BarrierH::operator()(double s) const { return -scale_ * weight_.tail(s, k_); }

double BarrierH::derivative(double s) const { return scale_ * std::pow(weight_.value(s), -1.0 / k_); }

double BarrierH::second_derivative(double s) const {
  // h'' = -(1/k) scale Phi^{-1/k-1} Phi'; Phi' by a centred difference for tabulated weights.
  double dphi;
  switch (weight_.kind()) {
    case OrliczWeight::Kind::exponential: dphi = weight_.parameter() * weight_.value(s); break;
    case OrliczWeight::Kind::power_shifted:
      dphi = s > 0.0 ? weight_.parameter() * std::pow(1.0 + s, weight_.parameter() - 1.0) : 0.0;
      break;
    default: {
      const double h = 1e-6 * (1.0 + std::abs(s));
      dphi = (weight_.value(s + h) - weight_.value(s - h)) / (2.0 * h);
    }
  }
  return -scale_ / k_ * std::pow(weight_.value(s), -1.0 / k_ - 1.0) * dphi;
}

BarrierH orlicz_h(const OrliczWeight& weight, int k, double N, double q, double alpha) {
  require(q > 1.0, Errc::invalid_argument, "orlicz_h: q must be > 1");
  require(alpha > 0.0, Errc::invalid_argument, "orlicz_h: alpha must be > 0");
  require(N > 0.0 && std::isfinite(N), Errc::invalid_argument, "orlicz_h: N must be positive and finite");
  require(std::isfinite(weight.lambda(k)), Errc::invalid_weight, "orlicz_h: int_0^inf Phi^{-1/k} diverges");
  return BarrierH(weight, k, N, q, alpha);
}

double barrier_epsilon(double A, int k) {
  require(A >= 0.0 && k >= 1, Errc::invalid_argument, "barrier_epsilon: need A >= 0, k >= 1");
  const double kk = k;
  return std::pow((kk + 1.0) / kk, kk / (kk + 1.0)) * std::pow(A, 1.0 / (kk + 1.0));
}

}  // namespace hlab
