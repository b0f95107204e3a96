#pragma once

namespace popuc {

/// Caps the number of OpenMP threads the kernels may use.  0 restores
/// the hardware default.  Results never depend on the thread count.
void set_thread_cap(int cap);
int thread_cap();

/// Thread count the kernels will actually use.
int effective_threads();

}  // namespace popuc
