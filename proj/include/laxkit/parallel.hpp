// Execution policy for the data-parallel kernels. Every parallel entry point
// takes an Exec and has a serial twin behind the same call; results are
// assembled into preallocated slots so the two paths are bit-identical.
#pragma once

#include <cstddef>

namespace laxkit {

enum class Exec { serial, parallel };

template <class F>
void parallel_for(std::size_t n, Exec exec, F&& fn) {
#ifdef LAXKIT_HAVE_OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace laxkit
