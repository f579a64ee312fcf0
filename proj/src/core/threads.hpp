#pragma once

#include <functional>

namespace abw {

// Worker-thread cap from the ABW_THREADS environment variable; unset, empty,
// zero or unparsable values select the default of 1 (fully sequential).
int worker_threads();

// Runs body(0..n-1) on up to worker_threads() threads with a static cyclic
// partition. Iterations must write to disjoint state; results are identical
// for every thread count.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace abw
