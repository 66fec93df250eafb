#pragma once

#include <optional>
#include <string_view>

#include "hlab/core.hpp"

namespace hlab {

/// Canonical radial test families, all vanishing at r = R.
///   log           c log(r/R)
///   power         c sgn(e) (r^e - R^e), default e = (2k-n)/k (log when e = 0)
///   quadratic     c (r^2 - R^2)/2
///   mollified-log c log( sqrt(r^2+eps^2) / sqrt(R^2+eps^2) )
///   newtonian     c (R^{2-n} - r^{2-n}), log for n = 2
enum class FamilyKind { log, power, quadratic, mollified_log, newtonian };

FamilyKind parse_family_kind(std::string_view name);
std::string_view to_string(FamilyKind kind) noexcept;

struct FamilySpec {
  FamilyKind kind = FamilyKind::log;
  double amplitude = 1.0;
  double eps = 0.0;
  std::optional<double> exponent;
};

/// A fully resolved closed-form profile: exponent fixed, newtonian mapped onto power.
struct CanonicalForm {
  FamilyKind kind = FamilyKind::log;
  double amplitude = 1.0;
  double eps = 0.0;
  double exponent = 0.0;
  double R = 1.0;

  double value(double r) const;
  double slope(double r) const;
  double second_derivative(double r) const;
  /// Radius of {u < -t}; 0 when the level set is empty.
  double level_radius(double t) const;
  /// True iff u -> -inf at the origin.
  bool unbounded_origin() const;

  CanonicalForm scaled(double c) const {
    CanonicalForm out = *this;
    out.amplitude *= c;
    return out;
  }
};

CanonicalForm resolve_family(const FamilySpec& spec, const HessianDim& dim, double R);

}  // namespace hlab
