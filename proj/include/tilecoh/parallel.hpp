#pragma once

#include <cstddef>
#include <functional>

namespace tilecoh {

// Worker count for intra-stage parallel loops (default 1).
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads; the body must
// only write to per-index state.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace tilecoh
