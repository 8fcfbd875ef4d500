#pragma once

#include <cstddef>
#include <functional>

namespace halo {

// Worker cap: HALO_THREADS environment variable when set (>= 1), otherwise
// the hardware concurrency.
int max_threads();

// Runs fn(0..count-1) over up to max_threads() workers. Callers must write
// results keyed by index so the outcome is independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace halo
