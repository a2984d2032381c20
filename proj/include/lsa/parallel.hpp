#pragma once

// Index-parallel loops whose width is capped by DIRICHLET_LSA_THREADS.

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lsa {

/// Worker count: DIRICHLET_LSA_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t parallel_width();

/// Calls body(i) for i in [0, n). Iterations must be independent; the first
/// exception thrown by any iteration is rethrown after all workers stop.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t width = parallel_width()) {
  if (width <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < width && t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lsa
