#pragma once

#include <cstddef>
#include <functional>

namespace rellich {

/// Worker count: RELLICH_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int thread_budget();

/// Runs fn(0..n-1) on up to thread_budget() threads. Results must be
/// written by index; the exception from the lowest failing index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rellich
