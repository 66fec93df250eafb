#include "hlab/error.hpp"

namespace hlab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::unsupported_dimension: return "unsupported-dimension";
    case Errc::not_admissible: return "not-admissible";
    case Errc::invalid_measure: return "invalid-measure";
    case Errc::degenerate_profile: return "degenerate-profile";
    case Errc::out_of_range: return "out-of-range";
    case Errc::invalid_weight: return "invalid-weight";
    case Errc::no_solution_found: return "no-solution-found";
    case Errc::precondition_violation: return "precondition-violation";
    case Errc::classification_inconclusive: return "classification-inconclusive";
    case Errc::schema_error: return "schema-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace hlab
