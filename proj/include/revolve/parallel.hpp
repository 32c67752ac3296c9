#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace revolve {

/// Thread cap: min(hardware, REVOLVE_JOHN_THREADS when set).
inline int maxThreads() {
  int n = int(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("REVOLVE_JOHN_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

/// Runs f(i) for i in [0, n). Each index writes only its own slot, so the
/// reduction done by the caller afterwards is deterministic.
template <class F>
void parallelFor(Eigen::Index n, F&& f) {
  const int threads = std::min<Eigen::Index>(maxThreads(), n) > 0
                          ? int(std::min<Eigen::Index>(maxThreads(), n))
                          : 1;
  if (threads <= 1) {
    for (Eigen::Index i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<Eigen::Index> next{0};
  std::vector<std::thread> pool;
  pool.reserve(size_t(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        const Eigen::Index i = next.fetch_add(1);
        if (i >= n) break;
        f(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace revolve
