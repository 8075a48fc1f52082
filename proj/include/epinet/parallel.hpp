#pragma once

#include <cstddef>
#include <functional>

namespace epinet {

// Worker count from EPINET_THREADS, else the hardware concurrency (at least 1).
std::size_t default_parallelism();

// Calls fn(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once; callers write results into slot i, so the outcome
// does not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace epinet
