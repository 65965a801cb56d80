#pragma once

#include <cstddef>
#include <functional>

namespace symppt {

// Worker count: SYMPPT_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls fn(i) for i in [0, count) across worker_count() threads. fn must
// only write to per-index state; callers reduce in index order afterwards.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace symppt
