#pragma once

#include <cstddef>
#include <functional>

namespace evt {

// Number of worker threads used by parallel_for: hardware concurrency,
// capped by the EVT_THREADS environment variable when set.
int max_threads();

// Run fn(i) for i in [begin, end) on contiguous index chunks across worker
// threads.  Callers get determinism by writing results to per-index slots;
// exceptions from fn are rethrown on the calling thread.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

}  // namespace evt
