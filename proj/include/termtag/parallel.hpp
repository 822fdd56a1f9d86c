#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace termtag {

unsigned default_worker_count();

// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `workers`
// threads. If several chunks throw, the exception of the lowest chunk is
// rethrown, so failures are reported the same way for any worker count.
template <typename Fn>
void parallel_for_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  workers = std::max(1u, workers);
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  if (chunks == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  const std::size_t step = (n + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(n, begin + step);
    threads.emplace_back([&, c, begin, end] {
      try {
        if (begin < end) fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace termtag
