#pragma once

#include <cstdint>
#include <functional>

namespace rcsp {

// Worker-thread cap: programmatic override first, then the RCSP_THREADS
// environment variable, then hardware concurrency. Always at least 1.
int max_worker_threads();

// n > 0 pins the cap; n <= 0 restores the default resolution order.
void set_max_worker_threads(int n);

// Runs run_chunk(c) for every c in [0, chunk_count). Chunks are distributed
// over up to max_worker_threads() threads; any exception is rethrown on the
// caller after all workers join. Callers must make per-chunk results
// order-independent (e.g. integer counters indexed by chunk) so the thread
// count never shows in the output.
void parallel_chunks(uint64_t chunk_count,
                     const std::function<void(uint64_t)>& run_chunk);

}  // namespace rcsp
