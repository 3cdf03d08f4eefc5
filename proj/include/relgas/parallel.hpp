#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relgas::par {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Parallel map over [0, n). The body must write only to slots owned by index i
// so results are bit-identical for any thread count. Exceptions must not
// escape the body; kernels record per-index failure codes and rethrow after
// the loop instead.
template <class F>
void for_index(std::int64_t n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) f(i);
#else
  for (std::int64_t i = 0; i < n; ++i) f(i);
#endif
}

}  // namespace relgas::par
