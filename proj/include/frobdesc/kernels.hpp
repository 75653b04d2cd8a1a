// Deterministic scan kernels. Each enumeration in this library walks an index
// space [0, n); the parallel variant splits it into contiguous chunks,
// processes chunks with OpenMP, and concatenates per-chunk buffers in index
// order, so serial and parallel runs produce byte-identical results.
#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frobdesc {

enum class ExecMode { Serial, Parallel };

#ifdef _OPENMP
constexpr bool kHaveOpenMP = true;
#else
constexpr bool kHaveOpenMP = false;
#endif

// fn(i, out) appends any results for index i to out.
template <class T, class Fn>
std::vector<T> indexed_scan(size_t n, Fn&& fn, ExecMode mode) {
  std::vector<T> result;
  if (n == 0) return result;
  if (mode == ExecMode::Serial || !kHaveOpenMP) {
    for (size_t i = 0; i < n; ++i) fn(i, result);
    return result;
  }
#ifdef _OPENMP
  const size_t nchunks = std::min<size_t>(n, 256);
  std::vector<std::vector<T>> buckets(nchunks);
#pragma omp parallel for schedule(dynamic)
  for (size_t c = 0; c < nchunks; ++c) {
    size_t lo = n * c / nchunks;
    size_t hi = n * (c + 1) / nchunks;
    for (size_t i = lo; i < hi; ++i) fn(i, buckets[c]);
  }
  size_t total = 0;
  for (const auto& b : buckets) total += b.size();
  result.reserve(total);
  for (auto& b : buckets)
    result.insert(result.end(), std::make_move_iterator(b.begin()),
                  std::make_move_iterator(b.end()));
#endif
  return result;
}

}  // namespace frobdesc
