#include "hlab/degiorgi.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hlab/error.hpp"

namespace hlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double degiorgi_threshold(double C0, double delta, double phi0, double s0) {
  require(delta > 0.0, Errc::invalid_argument, "degiorgi_threshold: delta must be > 0");
  require(C0 > 0.0, Errc::invalid_argument, "degiorgi_threshold: C0 must be > 0");
  require(phi0 >= 0.0, Errc::invalid_argument, "degiorgi_threshold: phi0 must be >= 0");
  if (phi0 == 0.0) return s0;
  return 2.0 * C0 * std::pow(phi0, delta) / (1.0 - std::pow(2.0, -delta)) + s0;
}

DeGiorgiData degiorgi_fit_and_verify(std::span<const DeGiorgiSample> samples) {
  require(!samples.empty(), Errc::invalid_argument, "degiorgi: need at least 8 samples");
  return degiorgi_fit_and_verify(samples, samples.front().s);
}

DeGiorgiData degiorgi_fit_and_verify(std::span<const DeGiorgiSample> samples, double s0) {
  require(samples.size() >= 8, Errc::invalid_argument, "degiorgi: need at least 8 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require(std::isfinite(samples[i].s) && samples[i].phi >= 0.0 && std::isfinite(samples[i].phi),
            Errc::invalid_argument, "degiorgi: samples must be finite with phi >= 0");
    if (i > 0) {
      require(samples[i].s > samples[i - 1].s, Errc::invalid_argument, "degiorgi: levels must increase");
      require(samples[i].phi <= samples[i - 1].phi, Errc::invalid_argument, "degiorgi: phi must be nonincreasing");
    }
  }
  DeGiorgiData out;
  out.samples.assign(samples.begin(), samples.end());
  out.s0 = s0;
  const std::size_t N = samples.size();

  // Step extension: phi(s) = phi_i on [s_i, s_{i+1}), phi_{N-1} beyond the last sample.
  std::size_t first = 0;
  while (first < N && samples[first].s < s0) ++first;
  const double phi0 = first > 0 ? samples[first - 1].phi : samples.front().phi;
  const double phi_s0 = (first < N && samples[first].s == s0) ? samples[first].phi : phi0;

  out.vanishing = kInf;
  for (std::size_t i = N; i-- > 0;) {
    if (samples[i].phi > kVanishTolerance) break;
    out.vanishing = samples[i].s;
  }

  double best_s = kInf;
  for (int d = 1; d <= 20; ++d) {
    const double delta = 0.1 * d;
    double C0 = 0.0;
    // Pairs start from s0 itself (which may fall inside a step) and every sample beyond it.
    std::vector<std::pair<double, double>> starts;
    if (first == N || samples[first].s > s0) starts.emplace_back(s0, phi_s0);
    for (std::size_t i = first; i < N; ++i) starts.emplace_back(samples[i].s, samples[i].phi);
    for (const auto& [si, pi] : starts) {
      if (pi <= 0.0) continue;
      const double denom = std::pow(pi, 1.0 + delta);
      for (std::size_t j = 0; j < N; ++j) {
        const double upper = j + 1 < N ? samples[j + 1].s : kInf;
        if (upper <= si || samples[j].phi <= 0.0) continue;
        if (std::isinf(upper)) {
          C0 = kInf;
          break;
        }
        C0 = std::max(C0, (upper - si) * samples[j].phi / denom);
      }
      if (std::isinf(C0)) break;
    }
    if (!std::isfinite(C0)) continue;
    if (C0 == 0.0) C0 = std::numeric_limits<double>::min();
    const double s_inf = degiorgi_threshold(C0, delta, phi_s0, s0);
    if (s_inf < best_s) {
      best_s = s_inf;
      out.C0 = C0;
      out.delta = delta;
    }
  }
  out.fitted = std::isfinite(best_s);
  out.s_inf = out.fitted ? best_s : kInf;
  if (!out.fitted) {
    out.C0 = kInf;
    out.verified = false;
    return out;
  }
  out.verified = true;
  for (const auto& smp : samples)
    if (smp.s >= out.s_inf && smp.phi > kVanishTolerance) out.verified = false;
  return out;
}

CheckRecord degiorgi_record(const DeGiorgiData& data, std::string id, std::string inputs) {
  if (!data.fitted)
    return make_flag(std::move(id), "de-giorgi-lemma", std::move(inputs) + " fit=none", false);
  // vanishing <= s_inf is the same statement as data.verified.
  return make_record(std::move(id), "de-giorgi-lemma",
                     fmt::format("{} C0={:.6g} delta={:.2g} s0={:.6g}", inputs, data.C0, data.delta, data.s0),
                     data.vanishing, data.s_inf);
}

}  // namespace hlab
