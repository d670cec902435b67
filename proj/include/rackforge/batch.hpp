#ifndef RACKFORGE_BATCH_HPP
#define RACKFORGE_BATCH_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rackforge {

/// Execution policy for sample batches. Kernels write one pre-allocated result
/// slot per sample and never touch shared state, so both policies produce
/// bit-identical output; `Serial` is the reference the tests compare against.
enum class ExecPolicy { Serial, Parallel };

inline bool parallel_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

template <class Fn>
void for_each_index(ExecPolicy policy, std::size_t count, Fn&& fn) {
  if (policy == ExecPolicy::Parallel && parallel_available()) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      fn(static_cast<std::size_t>(i));
#endif
  } else {
    for (std::size_t i = 0; i < count; ++i) fn(i);
  }
}

}  // namespace rackforge

#endif
