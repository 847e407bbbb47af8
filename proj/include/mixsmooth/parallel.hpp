#pragma once

#include <cstddef>
#include <functional>

namespace mixsmooth {

/// Number of worker threads used by library sweeps. 0 selects the hardware
/// concurrency. Results never depend on this value.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once and
/// must write only to its own output slot. Calls made from inside a worker
/// run sequentially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mixsmooth
