#include "posthoc/execution.hpp"

#if defined(POSTHOC_HAVE_OPENMP)
#include <omp.h>
#endif

namespace posthoc {

int parallel_workers() {
#if defined(POSTHOC_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace posthoc
