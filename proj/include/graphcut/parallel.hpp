#pragma once

#include <cstddef>
#include <functional>

namespace graphcut {

/// Worker cap: GRAPHCUT_THREADS if set to a positive integer, otherwise the
/// number of hardware threads.
int worker_count();

/// Runs body(i) for i in [0, count). Work items are handed out dynamically;
/// callers must write results into per-index slots so the outcome does not
/// depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace graphcut
