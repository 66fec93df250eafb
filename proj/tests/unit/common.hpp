#pragma once

#include <cmath>
#include <optional>

#include "doctest.h"
#include "hlab/error.hpp"
#include "hlab/family.hpp"

namespace testing {

/// Error code thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<hlab::Errc> code_of(F&& f) {
  try {
    f();
  } catch (const hlab::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline hlab::FamilySpec family(hlab::FamilyKind kind, double amplitude = 1.0, double eps = 0.0) {
  hlab::FamilySpec s;
  s.kind = kind;
  s.amplitude = amplitude;
  s.eps = eps;
  return s;
}

}  // namespace testing
