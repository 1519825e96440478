#include "snrlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace snrlab {

std::size_t effective_thread_count() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("SNRLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      n = v < 1 ? 1 : (std::size_t)std::min<long>(v, 1024);
    } catch (...) {
      // unparsable value: keep the hardware default
    }
  }
  return n;
}

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn) {
  if (begin >= end) return;
  const std::size_t count = end - begin;
  std::size_t threads = effective_thread_count();
  if (threads > count) threads = count;
  if (threads <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next(begin);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= end) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace snrlab
