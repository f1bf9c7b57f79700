#pragma once

#include <cstddef>
#include <functional>
#include <utility>

namespace horoaf {

// Worker count: HOROAF_THREADS caps it, hardware concurrency is the default.
std::size_t worker_count();

// Splits [0, count) into contiguous chunks, one per worker. Bodies may only
// write indices they own; all reductions happen elsewhere so results do not
// depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

// Pairwise (tree) reduction with a fixed association order, so accumulated
// sums reproduce bit-for-bit across runs and worker counts.
template <class T, class TermFn>
T pairwise_reduce(std::size_t lo, std::size_t hi, TermFn&& term) {
  if (lo >= hi) return T{};
  if (hi - lo <= 32) {
    T acc = term(lo);
    for (std::size_t i = lo + 1; i < hi; ++i) acc = acc + term(i);
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  T left = pairwise_reduce<T>(lo, mid, term);
  T right = pairwise_reduce<T>(mid, hi, term);
  return left + right;
}

}  // namespace horoaf
