#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace oklam {

inline int default_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

inline int resolve_threads(int requested) {
  return requested <= 0 ? default_thread_count() : requested;
}

// Runs fn(i) for i in [0, n). Tasks must be independent; callers keep
// determinism by writing results into index i of a preallocated buffer and
// reducing sequentially afterwards.
template <typename Fn>
void parallel_for_index(std::size_t n, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 1; t < spawn; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace oklam
