#pragma once

#include <functional>

namespace npspace {

/// Worker cap: NPSPACE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(0) ... body(count - 1), possibly concurrently. Callers write
/// results into per-index slots and reduce them in index order afterwards.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace npspace
