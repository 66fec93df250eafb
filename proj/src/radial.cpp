#include "hlab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hlab/error.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAtomThreshold = 1e-10;

// omega_n binom(n,k), the constant in m(r) = omega_n binom(n,k) r^{n-k} (u')^k.
double mass_constant(const HessianDim& dim) { return unit_ball_volume(dim.n()) * binomial(dim.n(), dim.k()); }

double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

std::vector<double> log_nodes(std::span<const double> r) {
  std::vector<double> s(r.size());
  std::transform(r.begin(), r.end(), s.begin(), [](double v) { return std::log(v); });
  return s;
}

void validate_nodes(std::span<const double> nodes, const char* what) {
  require(nodes.size() >= 8, Errc::invalid_argument, std::string(what) + ": need at least 8 nodes");
  require(nodes.front() > 0.0, Errc::invalid_argument, std::string(what) + ": nodes must be positive");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    require(nodes[i] > nodes[i - 1], Errc::invalid_argument, std::string(what) + ": nodes must be strictly increasing");
}

}  // namespace

double ball_volume(int n, double r) { return unit_ball_volume(n) * std::pow(r, n); }

// ---------------------------------------------------------------------------------------------
// RadialProfile

RadialProfile::RadialProfile(HessianDim dim, double R, double boundary, std::vector<double> nodes,
                             std::vector<double> values, std::vector<double> slope, std::optional<double> atom)
    : dim_(dim), R_(R), boundary_(boundary), nodes_(std::move(nodes)), values_(std::move(values)),
      slope_(std::move(slope)) {
  validate_nodes(nodes_, "profile");
  require(values_.size() == nodes_.size() && slope_.size() == nodes_.size(), Errc::invalid_argument,
          "profile: nodes, values and slope must have equal length");
  require(R_ > 0.0 && std::abs(nodes_.back() - R_) <= 1e-12 * R_, Errc::invalid_argument,
          "profile: last node must equal R");
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    require(std::isfinite(values_[i]) && std::isfinite(slope_[i]), Errc::invalid_argument,
            "profile: values and slopes must be finite on every node");
  require(std::abs(values_.back() - boundary_) <= 1e-9 * (1.0 + std::abs(boundary_)), Errc::invalid_argument,
          "profile: value at R must equal the boundary value");
  if (atom) {
    require(*atom >= 0.0 && std::isfinite(*atom), Errc::invalid_argument, "profile: atom must be finite and >= 0");
    atom_ = *atom;
  } else {
    const double c = mass_constant(dim_);
    const int n = dim_.n();
    const int k = dim_.k();
    const double m0 = c * std::pow(nodes_.front(), n - k) * std::pow(std::max(slope_.front(), 0.0), k);
    const double mR = c * std::pow(nodes_.back(), n - k) * std::pow(std::max(slope_.back(), 0.0), k);
    atom_ = (mR > 0.0 && m0 > kAtomThreshold * mR) ? m0 : 0.0;
  }
}

bool RadialProfile::unbounded_origin() const noexcept {
  if (canonical_) return canonical_->unbounded_origin();
  return atom_ > 0.0 && 2 * dim_.k() <= dim_.n();
}

bool RadialProfile::admissible() const noexcept {
  return std::all_of(slope_.begin(), slope_.end(), [](double v) { return v >= 0.0; });
}

RadialProfile RadialProfile::with_canonical(const CanonicalForm& form) const {
  RadialProfile out = *this;
  out.canonical_ = form;
  return out;
}

RadialProfile RadialProfile::without_canonical() const {
  RadialProfile out = *this;
  out.canonical_.reset();
  return out;
}

RadialProfile RadialProfile::scaled(double c) const {
  require(c > 0.0 && std::isfinite(c), Errc::invalid_argument, "scale factor must be positive");
  RadialProfile out = *this;
  for (double& v : out.values_) v *= c;
  for (double& v : out.slope_) v *= c;
  out.boundary_ *= c;
  out.atom_ *= std::pow(c, dim_.k());
  if (canonical_) out.canonical_ = canonical_->scaled(c);
  return out;
}

double RadialProfile::core_coefficient() const {
  if (atom_ <= 0.0) return 0.0;
  return std::pow(atom_ / mass_constant(dim_), 1.0 / dim_.k());
}

double RadialProfile::core_drop(double tau) const {
  if (tau <= 0.0) return 0.0;
  const double r0 = nodes_.front();
  if (atom_ > 0.0) {
    const double A = core_coefficient();
    const double b = (2.0 * dim_.k() - dim_.n()) / dim_.k();
    if (b == 0.0) return A * tau;
    return A * std::pow(r0, b) * (-std::expm1(-b * tau)) / b;
  }
  return 0.5 * slope_.front() * r0 * (-std::expm1(-2.0 * tau));
}

double RadialProfile::core_log_drop(double tau) const {
  if (tau <= 0.0) return -kInf;
  const double r0 = nodes_.front();
  if (atom_ > 0.0) {
    const double logA = std::log(core_coefficient());
    const double b = (2.0 * dim_.k() - dim_.n()) / dim_.k();
    if (b == 0.0) return logA + std::log(tau);
    if (b < 0.0) {
      const double a = -b;
      return logA - a * std::log(r0) + log_expm1(a * tau) - std::log(a);
    }
    return logA + b * std::log(r0) + std::log(-std::expm1(-b * tau)) - std::log(b);
  }
  const double d = core_drop(tau);
  return d > 0.0 ? std::log(d) : -kInf;
}

double RadialProfile::origin_value() const {
  if (canonical_) return canonical_->value(0.0);
  if (unbounded_origin()) return -kInf;
  const double r0 = nodes_.front();
  if (atom_ > 0.0) {
    const double b = (2.0 * dim_.k() - dim_.n()) / dim_.k();
    return values_.front() - core_coefficient() * std::pow(r0, b) / b;
  }
  return values_.front() - 0.5 * slope_.front() * r0;
}

double RadialProfile::value_at(double r) const {
  require(r >= 0.0 && r <= R_ * (1.0 + 1e-12), Errc::invalid_argument, "value_at: radius outside [0, R]");
  if (canonical_) return canonical_->value(std::min(r, R_));
  if (r == 0.0) return origin_value();
  const double r0 = nodes_.front();
  if (r < r0) return values_.front() - core_drop(std::log(r0 / r));
  const std::size_t i = numerics::bracket(nodes_, r);
  const double s0 = std::log(nodes_[i]);
  const double s1 = std::log(nodes_[i + 1]);
  return numerics::hermite(s0, s1, values_[i], values_[i + 1], nodes_[i] * slope_[i], nodes_[i + 1] * slope_[i + 1],
                           std::log(std::min(r, R_)));
}

double RadialProfile::slope_at(double r) const {
  require(r > 0.0 && r <= R_ * (1.0 + 1e-12), Errc::invalid_argument, "slope_at: radius outside (0, R]");
  if (canonical_) return canonical_->slope(std::min(r, R_));
  const double r0 = nodes_.front();
  if (r < r0) {
    if (atom_ > 0.0) return core_coefficient() * std::pow(r, (dim_.k() - dim_.n()) / static_cast<double>(dim_.k()));
    return slope_.front() * r / r0;
  }
  const std::size_t N = nodes_.size();
  const std::size_t i = numerics::bracket(nodes_, r);
  const std::size_t j0 = std::min(i == 0 ? 0 : i - 1, N - 4);
  double s[4];
  for (int a = 0; a < 4; ++a) s[a] = std::log(nodes_[j0 + a]);
  return numerics::lagrange4(s, &slope_[j0], std::log(std::min(r, R_)));
}

std::vector<double> RadialProfile::cumulative_mass() const {
  const double c = mass_constant(dim_);
  const int n = dim_.n();
  const int k = dim_.k();
  std::vector<double> m(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    m[i] = c * std::pow(nodes_[i], n - k) * std::pow(std::max(slope_[i], 0.0), k);
  return m;
}

double RadialProfile::cumulative_mass_at(double r) const {
  require(r >= 0.0 && r <= R_ * (1.0 + 1e-12), Errc::invalid_argument, "cumulative_mass_at: radius outside [0, R]");
  const double c = mass_constant(dim_);
  const int n = dim_.n();
  const int k = dim_.k();
  const double r0 = nodes_.front();
  if (r < r0) {
    const double m0 = c * std::pow(r0, n - k) * std::pow(std::max(slope_.front(), 0.0), k);
    return atom_ + std::max(m0 - atom_, 0.0) * std::pow(r / r0, n);
  }
  return c * std::pow(r, n - k) * std::pow(std::max(slope_at(r), 0.0), k);
}

// ---------------------------------------------------------------------------------------------
// RadialMeasure

RadialMeasure::RadialMeasure(HessianDim dim, std::vector<double> nodes, double atom, std::vector<double> density,
                             std::vector<double> cumulative)
    : dim_(dim), nodes_(std::move(nodes)), atom_(atom), density_(std::move(density)), cumulative_(std::move(cumulative)) {
  validate_nodes(nodes_, "measure");
  require(density_.size() == nodes_.size() && cumulative_.size() == nodes_.size(), Errc::invalid_argument,
          "measure: nodes, density and cumulative must have equal length");
  require(atom_ >= 0.0 && std::isfinite(atom_), Errc::invalid_measure, "measure: negative or non-finite atom");
  for (double f : density_)
    require(f >= 0.0 && std::isfinite(f), Errc::invalid_measure, "measure: negative or non-finite density");
  for (std::size_t i = 0; i < cumulative_.size(); ++i) {
    require(std::isfinite(cumulative_[i]) && cumulative_[i] >= 0.0, Errc::invalid_measure,
            "measure: cumulative mass must be finite and nonnegative");
    if (i > 0)
      require(cumulative_[i] >= cumulative_[i - 1] * (1.0 - 1e-12), Errc::invalid_measure,
              "measure: cumulative mass must be nondecreasing");
  }
}

RadialMeasure RadialMeasure::from_density_values(const HessianDim& dim, std::vector<double> nodes, double atom,
                                                 std::vector<double> density) {
  validate_nodes(nodes, "measure");
  require(density.size() == nodes.size(), Errc::invalid_argument, "measure: density length mismatch");
  require(atom >= 0.0 && std::isfinite(atom), Errc::invalid_measure, "measure: negative or non-finite atom");
  for (double f : density)
    require(f >= 0.0 && std::isfinite(f), Errc::invalid_measure, "measure: negative or non-finite density");
  const int n = dim.n();
  const double omega = unit_ball_volume(n);
  const auto s = log_nodes(nodes);
  std::vector<double> integrand(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) integrand[i] = n * omega * density[i] * std::pow(nodes[i], n);
  auto cum = numerics::cumulative_integral(s, integrand);
  const double core = omega * density.front() * std::pow(nodes.front(), n);
  for (double& v : cum) v = std::max(v, 0.0) + atom + core;
  return RadialMeasure(dim, std::move(nodes), atom, std::move(density), std::move(cum));
}

RadialMeasure RadialMeasure::from_density(const HessianDim& dim, std::vector<double> nodes, double atom,
                                          const std::function<double(double)>& density) {
  std::vector<double> f(nodes.size());
  std::transform(nodes.begin(), nodes.end(), f.begin(), density);
  return from_density_values(dim, std::move(nodes), atom, std::move(f));
}

RadialMeasure RadialMeasure::dirac(const HessianDim& dim, std::vector<double> nodes, double atom) {
  std::vector<double> zero(nodes.size(), 0.0);
  return from_density_values(dim, std::move(nodes), atom, std::move(zero));
}

// ---------------------------------------------------------------------------------------------
// Operator and solver

RadialMeasure s_k_radial(const RadialProfile& u) {
  require(u.admissible(), Errc::not_admissible, "s_k_radial: profile has u' < 0");
  const int n = u.dim().n();
  const int k = u.dim().k();
  const auto r = u.nodes();
  const auto slope = u.slope();
  const auto s = log_nodes(r);
  const auto dslope_ds = numerics::derivative(s, slope);
  const double b1 = binomial(n - 1, k - 1);
  const double b2 = binomial(n - 1, k);
  std::vector<double> density(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double q = slope[i] / r[i];
    const double second = dslope_ds[i] / r[i];
    density[i] = b1 * second * std::pow(q, k - 1) + b2 * std::pow(q, k);
    // Round-off on flat stretches; the measure itself is nonnegative.
    if (density[i] < 0.0 && density[i] > -1e-9 * (b1 * std::abs(second) * std::pow(q, k - 1) + b2 * std::pow(q, k)))
      density[i] = 0.0;
    density[i] = std::max(density[i], 0.0);
  }
  auto cumulative = u.cumulative_mass();
  const double atom = u.atom();
  cumulative.front() = std::max(cumulative.front(), atom);
  for (std::size_t i = 1; i < cumulative.size(); ++i) cumulative[i] = std::max(cumulative[i], cumulative[i - 1]);
  return RadialMeasure(u.dim(), std::vector<double>(r.begin(), r.end()), atom, std::move(density),
                       std::move(cumulative));
}

RadialProfile solve_dirichlet(const RadialMeasure& mu, double boundary) {
  require(std::isfinite(mu.total()), Errc::invalid_measure, "solve_dirichlet: total mass must be finite");
  const HessianDim& dim = mu.dim();
  const int n = dim.n();
  const int k = dim.k();
  const double c = mass_constant(dim);
  const auto r = mu.nodes();
  const auto m = mu.cumulative();
  const auto s = log_nodes(r);
  std::vector<double> slope(r.size());
  std::vector<double> ds(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    slope[i] = std::pow(m[i] / c, 1.0 / k) * std::pow(r[i], static_cast<double>(k - n) / k);
    ds[i] = slope[i] * r[i];
  }
  const auto F = numerics::cumulative_integral(s, ds);
  std::vector<double> values(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) values[i] = boundary - (F.back() - F[i]);
  values.back() = boundary;
  const double atom = mu.atom() > kAtomThreshold * mu.total() ? mu.atom() : 0.0;
  return RadialProfile(dim, r.back(), boundary, std::vector<double>(r.begin(), r.end()), std::move(values),
                       std::move(slope), atom);
}

// ---------------------------------------------------------------------------------------------
// Functionals

double hessian_mass(const RadialProfile& u) {
  require(u.admissible(), Errc::not_admissible, "hessian_mass: profile has u' < 0");
  return u.cumulative_mass().back();
}

double hessian_integral(const RadialProfile& u) {
  require(std::abs(u.boundary()) <= 1e-12, Errc::invalid_argument, "hessian_integral: boundary value must be 0");
  require(u.admissible(), Errc::not_admissible, "hessian_integral: profile has u' < 0");
  const double atom = u.atom();
  if (atom > 0.0 && u.unbounded_origin()) return kInf;
  const auto r = u.nodes();
  const auto slope = u.slope();
  const auto m = u.cumulative_mass();
  const auto s = log_nodes(r);
  std::vector<double> integrand(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) integrand[i] = std::max(m[i] - atom, 0.0) * slope[i] * r[i];
  const int n = u.dim().n();
  const double core = std::max(m.front() - atom, 0.0) * slope.front() * r.front() / (n + 2.0);
  const double atom_part = atom > 0.0 ? atom * (-u.origin_value()) : 0.0;
  return atom_part + core + numerics::integrate(s, integrand);
}

double phi_norm(const RadialProfile& u) {
  const double I = hessian_integral(u);
  return std::isinf(I) ? kInf : std::pow(std::max(I, 0.0), 1.0 / (u.dim().k() + 1));
}

double level_set_radius(const RadialProfile& u, double t) {
  require(t > 0.0, Errc::invalid_argument, "level_set_radius: level t must be positive");
  if (u.boundary() < -t) return u.radius();
  if (u.canonical() && u.boundary() == 0.0) return std::min(u.canonical()->level_radius(t), u.radius());
  const auto r = u.nodes();
  const auto v = u.values();
  const double target = -t;
  const double r0 = r.front();
  if (v.front() >= target) {
    // Level reached inside the core, if at all.
    const double need = v.front() - target;  // drop required, >= 0
    if (need <= 0.0) return r0;
    const HessianDim& dim = u.dim();
    if (u.atom() > 0.0) {
      const double A = u.core_coefficient();
      const double b = (2.0 * dim.k() - dim.n()) / dim.k();
      if (b == 0.0) return r0 * std::exp(-need / A);
      const double rb = std::pow(r0, b) - b * need / A;
      if (b > 0.0 && rb <= 0.0) return 0.0;
      return std::pow(rb, 1.0 / b);
    }
    const double d0 = u.slope().front();
    if (d0 <= 0.0) return 0.0;
    const double rho2 = r0 * r0 - 2.0 * r0 * need / d0;
    return rho2 > 0.0 ? std::sqrt(rho2) : 0.0;
  }
  // First node with u >= target.
  const auto it = std::lower_bound(v.begin(), v.end(), target);
  if (it == v.end()) return u.radius();
  const std::size_t j = static_cast<std::size_t>(it - v.begin());
  const std::size_t i = j - 1;
  const double s0 = std::log(r[i]);
  const double s1 = std::log(r[j]);
  const double d0 = r[i] * u.slope()[i];
  const double d1 = r[j] * u.slope()[j];
  double lo = s0;
  double hi = s1;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (numerics::hermite(s0, s1, v[i], v[j], d0, d1, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

double level_set_volume(const RadialProfile& u, double t) { return ball_volume(u.dim().n(), level_set_radius(u, t)); }

double lp_norm(const RadialProfile& u, double p) {
  require(p >= 1.0, Errc::invalid_argument, "lp_norm: exponent p must be >= 1");
  require(u.admissible(), Errc::not_admissible, "lp_norm: profile has u' < 0");
  const HessianDim& dim = u.dim();
  const int n = dim.n();
  const int k = dim.k();
  if (u.atom() > 0.0 && dim.subcritical()) {
    // |u| ~ r^{-(n-2k)/k}: p-integrable iff p (n-2k) < n k.
    if (p * (n - 2.0 * k) >= n * static_cast<double>(k) * (1.0 - 1e-14)) return kInf;
  }
  const double omega = unit_ball_volume(n);
  const auto r = u.nodes();
  const auto v = u.values();
  const auto s = log_nodes(r);
  std::vector<double> integrand(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    integrand[i] = n * omega * std::exp(p * std::log(std::abs(v[i]) + 1e-300) + n * s[i]);
  const double grid_part = numerics::integrate(s, integrand);
  const double r0 = r.front();
  const double u0 = v.front();
  auto core = [&](double tau) {
    const double drop = u.core_drop(tau);
    double log_abs;
    if (std::isfinite(drop) && drop < 1e300) {
      const double val = std::abs(u0 - drop);
      if (val == 0.0) return 0.0;
      log_abs = std::log(val);
    } else {
      log_abs = u.core_log_drop(tau);
    }
    return std::exp(p * log_abs - n * tau);
  };
  const double core_part = n * omega * std::pow(r0, n) * numerics::integrate_half_line(core);
  return std::pow(grid_part + core_part, 1.0 / p);
}

double weak_lp_quasinorm(const RadialProfile& u, double p) {
  require(p >= 1.0, Errc::invalid_argument, "weak_lp_quasinorm: exponent p must be >= 1");
  require(u.admissible(), Errc::not_admissible, "weak_lp_quasinorm: profile has u' < 0");
  const HessianDim& dim = u.dim();
  const int n = dim.n();
  const int k = dim.k();
  const double depth = -u.values().front();
  if (depth <= 0.0 && !u.unbounded_origin()) return 0.0;
  const double omega_p = std::pow(unit_ball_volume(n), 1.0 / p);
  auto w = [&](double t) { return t * omega_p * std::pow(level_set_radius(u, t), n / p); };
  const double T = std::max(depth, 1e-300);
  std::vector<double> ts;
  constexpr int kDecades = 8;
  constexpr int kPerDecade = 200;
  for (int j = 0; j <= kDecades * kPerDecade; ++j) ts.push_back(T * std::pow(10.0, -kDecades + static_cast<double>(j) / kPerDecade));
  if (u.unbounded_origin())
    for (int j = 1; j <= 20 * 40; ++j) ts.push_back(T * std::pow(10.0, j / 40.0));
  std::size_t best = 0;
  double best_w = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double val = w(ts[j]);
    if (val > best_w) {
      best_w = val;
      best = j;
    }
  }
  // Golden-section refinement in log t around the best sample.
  if (best_w > 0.0 && best > 0 && best + 1 < ts.size()) {
    double a = std::log(ts[best - 1]);
    double b = std::log(ts[best + 1]);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = w(std::exp(c));
    double fd = w(std::exp(d));
    for (int it = 0; it < 80; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = w(std::exp(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = w(std::exp(d));
      }
    }
    best_w = std::max({best_w, fc, fd});
  }
  // Limit t -> inf inside the core: t rho_t^{n/p} -> A/a exactly at p = n/a.
  if (u.atom() > 0.0 && dim.subcritical()) {
    const double a = (n - 2.0 * k) / k;
    const double ratio = n / (a * p);
    if (std::abs(ratio - 1.0) < 1e-12)
      best_w = std::max(best_w, omega_p * u.core_coefficient() / a);
    else if (ratio < 1.0)
      return kInf;
  }
  return best_w;
}

ExpIntegral exp_integral(const RadialProfile& u, double lambda, double beta, const ExpIntegralOptions& options) {
  const HessianDim& dim = u.dim();
  require(dim.intermediate(), Errc::unsupported_dimension, "exp_integral requires k = n/2");
  require(lambda >= 0.0 && std::isfinite(lambda), Errc::invalid_argument, "exp_integral: lambda must be >= 0");
  const double b0 = beta0(dim);
  require(beta >= 1.0 - 1e-12 && beta <= b0 + 1e-12, Errc::invalid_argument,
          "exp_integral: beta must lie in [1, beta_0]");
  const double M = hessian_mass(u);
  require(M > 0.0, Errc::degenerate_profile, "exp_integral: Hessian mass is zero");
  const int n = dim.n();
  const int k = dim.k();
  double gamma = k * beta / (k + 1.0);
  if (std::abs(gamma - 1.0) < 1e-12) gamma = 1.0;
  const double omega = unit_ball_volume(n);
  const double scale = std::pow(M, 1.0 / k);
  const double R = u.radius();

  if (options.use_closed_form && u.canonical() && u.canonical()->kind == FamilyKind::log && u.boundary() == 0.0) {
    // u = c log(r/R): (-u)/M^{1/k} = tau/kappa with tau = log(R/r), kappa = (omega binom)^{1/k}.
    const double kappa = std::pow(mass_constant(dim), 1.0 / k);
    if (gamma == 1.0) {
      const double a0 = alpha0(dim);
      ExpIntegral out;
      out.local_exponent = lambda / kappa - n;
      if (lambda >= a0) {
        out.divergent = true;
        out.value = kInf;
      } else {
        out.value = ball_volume(n, R) * a0 / (a0 - lambda);
      }
      return out;
    }
    auto f = [&](double tau) { return std::exp(lambda * std::pow(tau / kappa, gamma) - n * tau); };
    ExpIntegral out;
    out.local_exponent = -n;
    out.value = n * omega * std::pow(R, n) * numerics::integrate_half_line(f);
    return out;
  }

  ExpIntegral out;
  out.local_exponent = -n;
  if (u.atom() > 0.0 && u.unbounded_origin() && gamma == 1.0) {
    out.local_exponent = lambda * u.core_coefficient() / scale - n;
    if (out.local_exponent >= -1e-12) {
      out.divergent = true;
      out.value = kInf;
      return out;
    }
  }
  const auto r = u.nodes();
  const auto v = u.values();
  const auto s = log_nodes(r);
  auto exponent = [&](double neg_u) { return lambda * std::pow(std::max(neg_u, 0.0) / scale, gamma); };
  std::vector<double> integrand(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) integrand[i] = n * omega * std::exp(exponent(-v[i]) + n * s[i]);
  const double grid_part = numerics::integrate(s, integrand);
  const double u0 = v.front();
  auto core = [&](double tau) { return std::exp(exponent(u.core_drop(tau) - u0) - n * tau); };
  const double core_part = n * omega * std::pow(r.front(), n) * numerics::integrate_half_line(core);
  out.value = grid_part + core_part;
  return out;
}

// ---------------------------------------------------------------------------------------------
// Families

RadialProfile sample_profile(const HessianDim& dim, std::vector<double> nodes, const std::function<double(double)>& value,
                             const std::function<double(double)>& slope) {
  validate_nodes(nodes, "sample_profile");
  std::vector<double> v(nodes.size());
  std::vector<double> d(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    v[i] = value(nodes[i]);
    d[i] = slope(nodes[i]);
  }
  const double R = nodes.back();
  const double b = v.back();
  return RadialProfile(dim, R, b, std::move(nodes), std::move(v), std::move(d));
}

RadialProfile make_profile(const HessianDim& dim, double R, const FamilySpec& spec, const GridSpec& grid) {
  const CanonicalForm form = resolve_family(spec, dim, R);
  auto nodes = geometric_grid(R, grid);
  const int n = dim.n();
  const int k = dim.k();
  std::vector<double> values(nodes.size());
  std::vector<double> slope(nodes.size());
  std::vector<double> spectrum(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double ri = nodes[i];
    values[i] = form.value(ri);
    slope[i] = form.slope(ri);
    spectrum[0] = form.second_derivative(ri);
    std::fill(spectrum.begin() + 1, spectrum.end(), slope[i] / ri);
    if (!gamma_k_membership(spectrum, dim, 1e-10))
      fail(Errc::not_admissible, std::string("family '") + std::string(to_string(spec.kind)) +
                                     "' is not k-convex for n=" + std::to_string(n) + ", k=" + std::to_string(k));
  }
  values.back() = 0.0;
  double atom = 0.0;
  const double c = form.amplitude;
  if (form.kind == FamilyKind::log && dim.intermediate()) {
    atom = mass_constant(dim) * std::pow(c, k);
  } else if (form.kind == FamilyKind::power && form.exponent < 0.0 &&
             std::abs(form.exponent - (2.0 * k - n) / k) < 1e-12) {
    atom = mass_constant(dim) * std::pow(c * std::abs(form.exponent), k);
  }
  RadialProfile out(dim, R, 0.0, std::move(nodes), std::move(values), std::move(slope), atom);
  return out.with_canonical(form);
}

std::vector<RadialProfile> make_family(const HessianDim& dim, double R, const FamilySpec& spec, std::size_t count,
                                       const GridSpec& grid) {
  require(count >= 1, Errc::invalid_argument, "make_family: count must be >= 1");
  std::vector<RadialProfile> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    FamilySpec member = spec;
    member.amplitude = spec.amplitude * std::pow(2.0, static_cast<double>(j) - 0.5 * static_cast<double>(count - 1));
    out.push_back(make_profile(dim, R, member, grid));
  }
  return out;
}

}  // namespace hlab
