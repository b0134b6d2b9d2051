#pragma once

#include <cstddef>
#include <functional>

namespace singmod {

// Worker count: SINGMOD_THREADS if set to a positive integer, otherwise the
// number of hardware threads.
unsigned thread_count();

// Calls body(i) for i in [0, count), possibly concurrently. Callers write
// into per-index slots so results never depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace singmod
