#include "k3lat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace k3lat {

std::size_t thread_budget() {
  std::size_t requested = 0;
  if (const char* env = std::getenv("K3LAT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) requested = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // unparsable values fall back to auto
    }
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace k3lat
