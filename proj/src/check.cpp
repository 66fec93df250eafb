#include "hlab/check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hlab {

double margin_of(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(lhs) && std::isinf(rhs) && lhs == rhs) return std::numeric_limits<double>::quiet_NaN();
  return rhs - lhs;
}

CheckRecord make_record(std::string id, std::string anchor, std::string inputs, double lhs, double rhs,
                        double tolerance) {
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = margin_of(lhs, rhs);
  r.tolerance = tolerance;
  r.pass = !std::isnan(r.margin) && r.margin >= -tolerance;
  return r;
}

CheckRecord make_equality(std::string id, std::string anchor, std::string inputs, double a, double b,
                          double rel_tol) {
  const double err = std::abs(a - b) / std::max(std::abs(b), 1e-300);
  return make_record(std::move(id), std::move(anchor), std::move(inputs), err, rel_tol);
}

CheckRecord make_flag(std::string id, std::string anchor, std::string inputs, bool ok) {
  return make_record(std::move(id), std::move(anchor), std::move(inputs), ok ? 0.0 : 1.0, 0.0);
}

}  // namespace hlab
