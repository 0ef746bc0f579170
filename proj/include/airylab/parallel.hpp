#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace airylab {

inline int default_workers() {
  if (const char* env = std::getenv("AIRYLAB_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(replica) for replica in [0, count) across a fixed worker pool.
// Each replica writes only its own output slot, so results are identical
// for any worker count; reductions happen afterwards in replica order.
template <typename T, typename Fn>
std::vector<T> parallel_map_replicas(std::int64_t count, Fn fn, int workers = 0) {
  if (workers <= 0) workers = default_workers();
  std::vector<T> out(static_cast<std::size_t>(count));
  if (workers == 1 || count <= 1) {
    for (std::int64_t r = 0; r < count; ++r) out[static_cast<std::size_t>(r)] = fn(r);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::int64_t r = w; r < count; r += workers)
        out[static_cast<std::size_t>(r)] = fn(r);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace airylab
