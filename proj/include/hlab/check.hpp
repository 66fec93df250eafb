#pragma once

#include <string>

namespace hlab {

/// One verification result. margin = rhs - lhs; pass iff margin >= -tolerance.
struct CheckRecord {
  std::string id;
  std::string anchor;
  std::string inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// lhs <= rhs up to tolerance. A finite lhs against rhs = +inf passes; any NaN fails.
CheckRecord make_record(std::string id, std::string anchor, std::string inputs, double lhs, double rhs,
                        double tolerance = 0.0);

/// |a - b| / max(|b|, tiny) <= rel_tol, recorded as lhs = relative error, rhs = rel_tol.
CheckRecord make_equality(std::string id, std::string anchor, std::string inputs, double a, double b,
                          double rel_tol);

/// Boolean check recorded as lhs = 0 (pass) or 1 (fail) against rhs = 0.
CheckRecord make_flag(std::string id, std::string anchor, std::string inputs, bool ok);

double margin_of(double lhs, double rhs);

}  // namespace hlab
