#pragma once

#include <cstddef>
#include <functional>

namespace cc {

/// Worker count used when callers pass 0: hardware concurrency, capped by the
/// CC_THREADS environment variable when it holds a positive integer.
unsigned default_thread_count();

/// Calls body(i) for i in [0, n). Indices are handed out dynamically, so body
/// must not depend on which worker runs it. The first exception thrown by any
/// call is rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace cc
