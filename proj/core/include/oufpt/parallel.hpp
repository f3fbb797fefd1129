#pragma once

#include <cstddef>
#include <functional>

namespace oufpt {

/// Worker count: `requested` if > 0, else OU_FPT_THREADS env var, else
/// hardware concurrency (at least 1).
int resolve_thread_count(int requested);

/// Runs chunk_fn(worker_id, begin, end) over a static split of [0, n) on
/// `threads` std::threads (the calling thread handles chunk 0).
void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(int, std::size_t, std::size_t)>& chunk_fn);

}  // namespace oufpt
