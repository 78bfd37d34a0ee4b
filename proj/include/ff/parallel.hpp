#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ff {

/// Worker cap: hardware concurrency, clamped by the FOLIATION_FORGE_THREADS
/// environment variable when set.
inline int thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  int cap = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("FOLIATION_FORGE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1 && v < cap) cap = v;
  }
  return cap;
}

/// Runs fn(i) for i in [0, count) across at most thread_cap() workers in
/// contiguous chunks. Caller-side determinism is preserved as long as fn(i)
/// writes only to slot i.
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
  if (count == 0) return;
  int workers = thread_cap();
  if (workers <= 1 || count < 256) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  size_t chunk = (count + workers - 1) / static_cast<size_t>(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    size_t lo = static_cast<size_t>(w) * chunk;
    if (lo >= count) break;
    size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ff
