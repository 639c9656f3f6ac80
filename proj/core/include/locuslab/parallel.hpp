#pragma once

#include <cstddef>
#include <functional>

namespace locuslab {

// Worker count: LOCUSLAB_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned thread_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = thread_count()).
// Work items are claimed dynamically; callers write results by index, so the
// outcome does not depend on the schedule. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace locuslab
