#pragma once

#include <cstddef>
#include <functional>

namespace memwave {

/// Worker count: MEMWAVE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count) across thread_count() workers. Results must
/// be written to slot i by the body so the outcome is schedule independent. If
/// any body throws, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace memwave
