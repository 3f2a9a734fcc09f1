#pragma once

#include <cstdint>
#include <functional>

namespace crsim {

// Runs fn(i) for i in [0, count) on up to n_threads workers using a static
// contiguous partition.  Callers keep determinism by writing results into
// per-index slots and reducing sequentially afterwards; the partition never
// influences what any single fn(i) computes.
void parallel_for(std::int64_t count, int n_threads,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace crsim
