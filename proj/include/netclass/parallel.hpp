#pragma once

#include <cstddef>
#include <functional>

namespace netclass {

/// Worker cap for all batch operations. 0 means "use available cores".
void set_thread_count(std::size_t threads);
std::size_t thread_count();

/// Calls `body(i)` for every i in [0, count), spread over `thread_count()`
/// workers. Results must be written to index-addressed storage; the first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace netclass
