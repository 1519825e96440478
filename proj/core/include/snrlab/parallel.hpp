#pragma once

#include <cstddef>
#include <functional>

namespace snrlab {

// Worker count: hardware concurrency capped by the SNRLAB_THREADS
// environment variable (values < 1 mean serial).
std::size_t effective_thread_count();

// Runs fn(i) for i in [begin, end). Indices are claimed atomically, so the
// execution order is unspecified; callers must write results to disjoint
// slots, which keeps output independent of the thread count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

}  // namespace snrlab
