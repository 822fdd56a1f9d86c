#include "termtag/parallel.hpp"

namespace termtag {

unsigned default_worker_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : std::min(n, 16u);
}

}  // namespace termtag
