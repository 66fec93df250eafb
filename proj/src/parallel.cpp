#include "hlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hlab {

std::size_t thread_count() {
  if (const char* env = std::getenv("HESSIAN_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace hlab
