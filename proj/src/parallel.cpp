#include "rollcall/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace rollcall {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ROLLCALL_VEM_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  int workers) {
  if (n == 0) return;
  const int w = std::min<std::size_t>(resolve_workers(workers), n);
  if (w <= 1) {
    body(0, n);
    return;
  }
  // Fixed chunking (independent of w) + atomic work stealing over chunks.
  const std::size_t chunk = std::max<std::size_t>(1, n / (4 * static_cast<std::size_t>(w)));
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t lo = next.fetch_add(chunk);
      if (lo >= n) break;
      body(lo, std::min(lo + chunk, n));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(w - 1);
  for (int t = 1; t < w; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace rollcall
