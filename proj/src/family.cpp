#include "hlab/family.hpp"

#include <cmath>
#include <string>

#include "hlab/error.hpp"

namespace hlab {

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "log") return FamilyKind::log;
  if (name == "power") return FamilyKind::power;
  if (name == "quadratic") return FamilyKind::quadratic;
  if (name == "mollified-log") return FamilyKind::mollified_log;
  if (name == "newtonian") return FamilyKind::newtonian;
  fail(Errc::invalid_argument, "unknown family kind '" + std::string(name) + "'");
}

std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::log: return "log";
    case FamilyKind::power: return "power";
    case FamilyKind::quadratic: return "quadratic";
    case FamilyKind::mollified_log: return "mollified-log";
    case FamilyKind::newtonian: return "newtonian";
  }
  return "unknown";
}

CanonicalForm resolve_family(const FamilySpec& spec, const HessianDim& dim, double R) {
  require(R > 0.0, Errc::invalid_argument, "family radius must be positive");
  require(spec.amplitude > 0.0 && std::isfinite(spec.amplitude), Errc::invalid_argument,
          "family amplitude must be positive");
  CanonicalForm f;
  f.kind = spec.kind;
  f.amplitude = spec.amplitude;
  f.R = R;
  switch (spec.kind) {
    case FamilyKind::log:
    case FamilyKind::quadratic:
      break;
    case FamilyKind::mollified_log:
      require(spec.eps > 0.0, Errc::invalid_argument, "mollified-log needs eps > 0");
      f.eps = spec.eps;
      break;
    case FamilyKind::power:
      f.exponent = spec.exponent.value_or((2.0 * dim.k() - dim.n()) / dim.k());
      if (f.exponent == 0.0) f.kind = FamilyKind::log;
      break;
    case FamilyKind::newtonian:
      if (dim.n() == 2) {
        f.kind = FamilyKind::log;
      } else {
        f.kind = FamilyKind::power;
        f.exponent = 2.0 - dim.n();
      }
      break;
  }
  return f;
}

double CanonicalForm::value(double r) const {
  const double c = amplitude;
  switch (kind) {
    case FamilyKind::log: return c * std::log(r / R);
    case FamilyKind::quadratic: return 0.5 * c * (r * r - R * R);
    case FamilyKind::mollified_log:
      return 0.5 * c * std::log((r * r + eps * eps) / (R * R + eps * eps));
    case FamilyKind::power:
    case FamilyKind::newtonian: {
      const double s = exponent > 0 ? 1.0 : -1.0;
      return c * s * (std::pow(r, exponent) - std::pow(R, exponent));
    }
  }
  return 0.0;
}

double CanonicalForm::slope(double r) const {
  const double c = amplitude;
  switch (kind) {
    case FamilyKind::log: return c / r;
    case FamilyKind::quadratic: return c * r;
    case FamilyKind::mollified_log: return c * r / (r * r + eps * eps);
    case FamilyKind::power:
    case FamilyKind::newtonian: return c * std::abs(exponent) * std::pow(r, exponent - 1.0);
  }
  return 0.0;
}

double CanonicalForm::second_derivative(double r) const {
  const double c = amplitude;
  switch (kind) {
    case FamilyKind::log: return -c / (r * r);
    case FamilyKind::quadratic: return c;
    case FamilyKind::mollified_log: {
      const double d = r * r + eps * eps;
      return c * (eps * eps - r * r) / (d * d);
    }
    case FamilyKind::power:
    case FamilyKind::newtonian:
      return c * std::abs(exponent) * (exponent - 1.0) * std::pow(r, exponent - 2.0);
  }
  return 0.0;
}

double CanonicalForm::level_radius(double t) const {
  require(t > 0.0, Errc::invalid_argument, "level must be positive");
  const double c = amplitude;
  switch (kind) {
    case FamilyKind::log: return R * std::exp(-t / c);
    case FamilyKind::quadratic: {
      const double rho2 = R * R - 2.0 * t / c;
      return rho2 > 0.0 ? std::sqrt(rho2) : 0.0;
    }
    case FamilyKind::mollified_log: {
      const double rho2 = (R * R + eps * eps) * std::exp(-2.0 * t / c) - eps * eps;
      return rho2 > 0.0 ? std::sqrt(rho2) : 0.0;
    }
    case FamilyKind::power:
    case FamilyKind::newtonian: {
      const double base = std::pow(R, exponent);
      if (exponent < 0.0) return std::pow(base + t / c, 1.0 / exponent);
      const double rem = base - t / c;
      return rem > 0.0 ? std::pow(rem, 1.0 / exponent) : 0.0;
    }
  }
  return 0.0;
}

bool CanonicalForm::unbounded_origin() const {
  return kind == FamilyKind::log || ((kind == FamilyKind::power || kind == FamilyKind::newtonian) && exponent < 0.0);
}

}  // namespace hlab
