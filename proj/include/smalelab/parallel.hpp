#pragma once

#include <cstddef>
#include <functional>

namespace smalelab {

/// Worker count: explicit request, else the SMALE_LAB_THREADS environment
/// cap, else the machine parallelism.
int worker_count(int requested = 0);

/// Run fn(i) for i in [0, count) on `workers` threads. Work is split by
/// index into contiguous chunks; fn must only write to per-index state, so
/// results never depend on the thread count.
void parallel_for(size_t count, const std::function<void(size_t)>& fn, int workers = 0);

}  // namespace smalelab
