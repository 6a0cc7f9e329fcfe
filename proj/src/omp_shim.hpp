#pragma once

// Include this instead of <omp.h> so the kernels still compile, with the
// pragmas ignored, when OpenMP is unavailable.

#if defined(_OPENMP)
#include <omp.h>
#else
#pragma GCC diagnostic ignored "-Wunknown-pragmas"
inline int omp_get_thread_num() { return 0; }
inline int omp_get_max_threads() { return 1; }
#endif
