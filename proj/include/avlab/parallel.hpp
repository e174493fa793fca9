#pragma once

#include <cstddef>
#include <functional>

namespace avlab {

// worker cap resolution: AVALUE_LAB_THREADS env var wins over the requested
// value; requested 0 means hardware_concurrency
void set_thread_cap(unsigned requested);
unsigned thread_cap();

// runs fn(i) for i in [0, n) on up to thread_cap() workers; blocks until all
// are done. Work items must write to disjoint slots so the merge order (and
// therefore every downstream result) is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace avlab
