#pragma once

#include <cstddef>
#include <functional>

namespace eigengeo {

// Worker count: EIGENGEO_THREADS if set (DomainError unless it is a positive
// integer), otherwise the number of hardware threads (at least 1).
std::size_t worker_count();

// Calls body(i) for every i in [0, count). Iterations are split into
// contiguous blocks across workers; body must only write to slot i of
// caller-owned storage. The first exception thrown by any iteration is
// rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace eigengeo
