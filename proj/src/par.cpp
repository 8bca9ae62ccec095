#include "tauforge/par.hpp"

#include <cstdlib>
#include <string>

#ifdef TAUFORGE_HAVE_OPENMP
#include <omp.h>
#endif

namespace tauforge::par {

int max_threads() {
#ifdef TAUFORGE_HAVE_OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("TAUFORGE_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap >= 1 && cap < n) n = cap;
    } catch (...) {
      // unparsable cap: ignore, keep the OpenMP default
    }
  }
  return n < 1 ? 1 : n;
#else
  return 1;
#endif
}

bool use_parallel(Exec e) {
  if (e == Exec::Serial) return false;
#ifdef TAUFORGE_HAVE_OPENMP
  if (e == Exec::Parallel) return true;
  return max_threads() > 1;
#else
  return false;
#endif
}

namespace detail {

void run_indexed(std::size_t n, void (*fn)(std::size_t, void*), void* ctx, bool parallel) {
#ifdef TAUFORGE_HAVE_OPENMP
  if (parallel) {
    const int nt = max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i), ctx);
    }
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i, ctx);
}

}  // namespace detail

}  // namespace tauforge::par
