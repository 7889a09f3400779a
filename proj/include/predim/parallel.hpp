#pragma once

#include <cstddef>
#include <functional>

namespace predim {

/// Default worker count: PREDIM_THREADS if set, else the hardware count.
std::size_t default_threads();
/// Caps the worker count used by parallel_for (0 restores the default).
void set_thread_cap(std::size_t threads);
std::size_t thread_cap();

/// Calls body(i) for i in [0, n) on up to thread_cap() workers. Callers
/// write results into slot i so output never depends on scheduling. The
/// first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace predim
