// Deterministic data parallelism.
//
// parallel_for distributes disjoint index chunks to worker threads; each
// index writes only its own output slots, so results are independent of the
// worker count. Reductions never accumulate in thread order: terms are
// materialized into a buffer first and collapsed with tree_sum, a fixed
// pairwise reduction whose result is bitwise identical no matter how the
// buffer was filled.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace rollcall {

// Effective worker count: explicit request, else ROLLCALL_VEM_WORKERS,
// else hardware concurrency.
int resolve_workers(int requested = 0);

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  int workers = 0);

// Fixed pairwise tree: sum [lo, hi) split at the midpoint.
inline double tree_sum(std::span<const double> v, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n == 0) return 0.0;
  if (n == 1) return v[lo];
  if (n == 2) return v[lo] + v[lo + 1];
  const std::size_t mid = lo + n / 2;
  return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

inline double tree_sum(std::span<const double> v) { return tree_sum(v, 0, v.size()); }

}  // namespace rollcall
