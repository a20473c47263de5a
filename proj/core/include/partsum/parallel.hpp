#pragma once

#include <cstddef>
#include <functional>

namespace partsum {

// Worker-pool size used by chunked loops. 0 restores hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(chunk) for chunk in [0, n_chunks). Chunks execute on any thread in
// any order, so fn must touch only chunk-local state; callers that care about
// reproducible floating-point results merge per-chunk partials in ascending
// chunk order afterwards.
void parallel_for_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn);

}  // namespace partsum
