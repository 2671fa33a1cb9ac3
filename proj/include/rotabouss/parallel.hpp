#pragma once

#include <cstddef>
#include <functional>

namespace rotabouss {

// Worker count for scan-style loops. Starts from ROTABOUSS_THREADS (default 1).
int thread_count();
void set_thread_count(int n);

// Calls body(i) for i in [0, n). Each index runs exactly once; callers write
// results into preallocated slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rotabouss
