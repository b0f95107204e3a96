#include "popuc/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace popuc {

namespace {
std::atomic<int> g_thread_cap{0};
}

void set_thread_cap(int cap) { g_thread_cap.store(cap < 0 ? 0 : cap); }

int thread_cap() { return g_thread_cap.load(); }

int effective_threads() {
#ifdef _OPENMP
  const int hw = omp_get_max_threads();
#else
  const int hw = 1;
#endif
  const int cap = g_thread_cap.load();
  if (cap > 0 && cap < hw) return cap;
  return hw;
}

}  // namespace popuc
