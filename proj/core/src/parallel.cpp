#include "parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crsim {

void parallel_for(std::int64_t count, int n_threads,
                  const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  n_threads = std::clamp<std::int64_t>(n_threads, 1, count);
  if (n_threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  const std::int64_t chunk = (count + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    const std::int64_t lo = t * chunk;
    const std::int64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace crsim
