#include "etclosure/parallel.hpp"

#include <cstdlib>
#include <string>

namespace etclosure {

int max_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("ETCLOSURE_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1 && cap < n) n = cap;
    } catch (const std::exception&) {
      // unparsable value: ignore the cap
    }
  }
  return n;
}

}  // namespace etclosure
