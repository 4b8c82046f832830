#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace incidence_braid {

/// Worker count resolution: explicit value if positive, else the
/// INCIDENCE_BRAID_WORKERS environment variable, else one.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INCIDENCE_BRAID_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

/// Runs fn(i) for i in [0, n). Work is partitioned into contiguous chunks,
/// one per worker; fn must write any result into a pre-sized slot for index
/// i so that the outcome is independent of the worker count.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t k = 0; k < w; ++k) {
    std::size_t lo = n * k / w, hi = n * (k + 1) / w;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace incidence_braid
