#pragma once

#include <cstddef>
#include <functional>

namespace critsamp {

/// Runs fn(0..n-1) on up to `threads` workers. Tasks must write to
/// disjoint slots; results are then independent of the worker count.
/// If several tasks throw, the exception of the smallest index is
/// rethrown after all workers join.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

/// Worker count default: CRITSAMP_THREADS env var if set, otherwise
/// hardware concurrency (at least 1).
int default_thread_count();

}  // namespace critsamp
