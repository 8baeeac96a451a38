#pragma once

// Include this instead of <omp.h> so the kernels also build without OpenMP.

#if defined(_OPENMP)
#include <omp.h>
namespace jaynes {
inline constexpr bool use_omp = true;
}  // namespace jaynes
#else
namespace jaynes {
inline constexpr bool use_omp = false;
}  // namespace jaynes
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif
