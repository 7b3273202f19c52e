#pragma once

#include <cstddef>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace varprop {

/// Thread count resolution: explicit argument wins, then VARPROP_THREADS,
/// then the OpenMP default. Returns at least 1.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("VARPROP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Index-parallel loop. Results must be written to per-index slots so the
/// outcome is independent of scheduling; reductions belong after the loop,
/// in index order.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
  const int nt = resolve_threads(threads);
#ifdef _OPENMP
  if (nt > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  (void)nt;
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace varprop
