#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace fibmap {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(begin, end) over disjoint contiguous chunks of [0, n).
/// Chunking is by worker, but callers must only write to disjoint
/// per-index slots so results do not depend on the worker count.
inline void parallel_for(long long n, int workers, const std::function<void(long long, long long)>& fn) {
  int w = resolve_workers(workers);
  if (n <= 0) return;
  if (w <= 1 || n < 2 * w) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  long long chunk = (n + w - 1) / w;
  for (int i = 0; i < w; ++i) {
    long long b = i * chunk;
    long long e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([=, &fn] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

/// Runs fn(batch_index) for every batch in [0, nbatches); work-stealing by
/// atomic counter. fn must key any randomness and output on batch_index only.
inline void parallel_batches(long long nbatches, int workers, const std::function<void(long long)>& fn) {
  int w = resolve_workers(workers);
  if (nbatches <= 0) return;
  if (w <= 1 || nbatches == 1) {
    for (long long b = 0; b < nbatches; ++b) fn(b);
    return;
  }
  std::atomic<long long> counter{0};
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int i = 0; i < w; ++i) {
    pool.emplace_back([&] {
      for (;;) {
        long long b = counter.fetch_add(1);
        if (b >= nbatches) return;
        fn(b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace fibmap
