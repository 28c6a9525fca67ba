#pragma once

#include <functional>

namespace wwlab {

// Worker count from WWLAB_THREADS (default: hardware concurrency).
int thread_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so any per-index accumulation keeps a fixed order and results are bitwise
// independent of the thread count.
// Loops shorter than min_parallel run on the calling thread.
void parallel_for(int n, const std::function<void(int)>& body, int min_parallel = 64);

}  // namespace wwlab
