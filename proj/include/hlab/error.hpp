#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlab {

enum class Errc {
  invalid_argument,
  unsupported_dimension,
  not_admissible,
  invalid_measure,
  degenerate_profile,
  out_of_range,
  invalid_weight,
  no_solution_found,
  precondition_violation,
  classification_inconclusive,
  schema_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

/// Error raised by every lab operation; the code identifies the failed contract.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace hlab
