#pragma once

#include <cstddef>

namespace tauforge::par {

// Execution policy for the data-parallel kernels. Every kernel has a serial
// reference path; the parallel path writes into per-index slots and reduces
// in index order, so results are identical for any thread count.
enum class Exec { Auto, Serial, Parallel };

// Worker cap: TAUFORGE_THREADS (if set to a positive integer) bounds the
// OpenMP thread count; otherwise the OpenMP default applies. 1 when built
// without OpenMP.
int max_threads();

bool use_parallel(Exec e);

namespace detail {
void run_indexed(std::size_t n, void (*fn)(std::size_t, void*), void* ctx, bool parallel);
}

// Applies fn(0..n-1). Under Exec::Parallel (or Auto with >1 workers) the
// calls run on an OpenMP team; fn must be safe to run concurrently for
// distinct indices and must not throw.
template <typename F>
void for_n(Exec e, std::size_t n, F&& fn) {
  struct Trampoline {
    static void call(std::size_t i, void* ctx) { (*static_cast<F*>(ctx))(i); }
  };
  detail::run_indexed(n, &Trampoline::call, &fn, use_parallel(e) && n > 1);
}

}  // namespace tauforge::par
