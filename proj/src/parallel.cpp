#include "shadowlab/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shadowlab {

int configure_threads_from_env() {
  if (const char* env = std::getenv("SHADOWLAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) set_worker_count(n);
    } catch (const std::exception&) {
    }
  }
  return worker_count();
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace shadowlab
