#pragma once

#include <functional>

namespace rparvi::detail {

/// Maps 0 to the hardware thread count; clamps to at least 1.
int resolve_workers(int requested);

/// Runs fn(i) for i in [0, n) split into contiguous blocks across `workers`
/// threads. If invocations throw, the exception with the smallest index is
/// rethrown after all threads join, matching serial behavior.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace rparvi::detail
