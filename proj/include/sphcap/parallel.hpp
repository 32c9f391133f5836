#pragma once

#include <cstddef>
#include <functional>

namespace sphcap {

/// Worker count for per-sample evaluation. Defaults to SPHCAP_THREADS when set,
/// otherwise the hardware concurrency. Zero restores the default.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is written by exactly one worker,
/// so results are independent of the schedule. The exception thrown for the
/// lowest failing chunk is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace sphcap
