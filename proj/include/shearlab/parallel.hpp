#pragma once

#include <cstddef>
#include <functional>

namespace shearlab {

/// Worker count used by parallel_for. 0 selects the hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for every i in [0, n). Iterations are split into contiguous
/// blocks; callers write per-index results and reduce them in index order so
/// output never depends on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace shearlab
