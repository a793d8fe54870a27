#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace psindex {

/// Thread count from PSINDEX_THREADS when set, else `requested`, else hardware concurrency.
int resolve_threads(int requested);

/// Calls fn(i) for i in [0, count) on up to `threads` workers.  Work is split into
/// contiguous blocks and every result slot is owned by one index, so the output never
/// depends on the thread count.  The first exception (lowest index) is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace psindex
