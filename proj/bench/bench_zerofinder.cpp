// Times the OpenMP zero-finding kernel against the serial reference on
// the same inputs and reports the speedup.  Honors POPUC_THREADS.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "popuc/parallel.hpp"
#include "popuc/verblunsky.hpp"
#include "popuc/zerofinder.hpp"

namespace {

double run_ms(const std::function<popuc::ZeroSet()>& fn, popuc::ZeroSet& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("POPUC_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) popuc::set_thread_cap(cap);
  }

  std::vector<std::size_t> degrees{250, 500, 1000, 2000};
  if (argc > 1) {
    degrees.clear();
    for (int i = 1; i < argc; ++i) degrees.push_back(std::strtoull(argv[i], nullptr, 10));
  }

  const auto model = popuc::VerblunskyModel::iid_uniform_disk(0.8, 12345);
  std::printf("threads=%d\n", popuc::effective_threads());
  std::printf("%8s %14s %14s %10s %12s\n", "n", "serial_ms", "parallel_ms", "speedup",
              "max_dtheta");

  for (std::size_t n : degrees) {
    popuc::ZeroSet serial, parallel;
    const double t_serial =
        run_ms([&] { return popuc::find_zeros_serial(model, n, {1.0, 0.0}); }, serial);
    const double t_parallel =
        run_ms([&] { return popuc::find_zeros(model, n, {1.0, 0.0}); }, parallel);
    double max_diff = 0.0;
    for (std::size_t j = 0; j < serial.thetas.size(); ++j)
      max_diff = std::max(max_diff, std::abs(serial.thetas[j] - parallel.thetas[j]));
    std::printf("%8zu %14.2f %14.2f %10.2f %12.3e\n", n, t_serial, t_parallel,
                t_serial / t_parallel, max_diff);
  }
  return 0;
}
