#include "lsa/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lsa {

std::size_t parallel_width() {
  if (const char* env = std::getenv("DIRICHLET_LSA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace lsa
