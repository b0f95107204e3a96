#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "popuc/verblunsky.hpp"

namespace popuc {

/// All n+1 unit-circle zeros of the degree-(n+1) paraorthogonal
/// polynomial, as strictly increasing angles in [0, 2*pi), with the
/// polynomial residual |value at e^{i theta_j}| attached per zero.
struct ZeroSet {
  std::size_t n_plus_1 = 0;
  std::complex<double> beta{1.0, 0.0};
  std::vector<double> thetas;
  std::vector<double> residuals;
};

inline constexpr double kDefaultTolTheta = 1e-12;

/// OpenMP-parallel zero finder: a coarse scan of the phase on a uniform
/// grid of 4(n+1) points yields one bracket per target, and the n+1
/// brackets are bisected independently.  Output is identical for any
/// thread count.
ZeroSet find_zeros(const VerblunskyModel& model, std::size_t n,
                   std::complex<double> beta, double tol_theta = kDefaultTolTheta);

/// Serial reference implementation: targets are solved in increasing
/// order, each bracketed by [previous zero, 2*pi].  Kept for testing
/// and benchmarking against the parallel kernel.
ZeroSet find_zeros_serial(const VerblunskyModel& model, std::size_t n,
                          std::complex<double> beta, double tol_theta = kDefaultTolTheta);

/// Independent verification path for small degrees (n <= 50): builds the
/// coefficient vector via the degree recursion and finds all roots with a
/// from-scratch Durand-Kerner iteration, then projects the roots to the
/// unit circle.  Test oracle only; never used by find_zeros.
ZeroSet oracle_zeros(const VerblunskyModel& model, std::size_t n,
                     std::complex<double> beta);

/// Number of zeros with angle in [a, b), from phase increments alone
/// (no individual zeros are located).  Requires a <= b <= a + 2*pi.
long long count_zeros_in(const VerblunskyModel& model, std::size_t n,
                         std::complex<double> beta, double a, double b);

}  // namespace popuc
