#pragma once

#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace shardforge {

// Worker count: SHARD_FORGE_THREADS overrides the flag; default 1.
inline int resolve_threads(int requested = 0) {
  if (const char* env = std::getenv("SHARD_FORGE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return requested > 0 ? requested : 1;
}

// Runs fn(0..count-1) over a strided index split.  fn must be safe to call
// concurrently; merging is the caller's business.
inline void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  size_t workers = std::min<size_t>(size_t(threads), count);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace shardforge
