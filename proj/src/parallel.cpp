#include "razumikhin/parallel.hpp"

#include <cstdlib>
#include <string>

namespace raz {

unsigned worker_count() {
  if (const char* env = std::getenv("RAZ_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace raz
