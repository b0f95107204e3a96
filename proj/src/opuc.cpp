#include "popuc/opuc.hpp"

#include <cmath>
#include <stdexcept>

namespace popuc {

BlaschkeTrace blaschke_trace(const VerblunskyModel& model, std::size_t n, double theta) {
  BlaschkeTrace trace;
  trace.theta = theta;
  trace.values.reserve(n + 1);

  const std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> b{1.0, 0.0};  // b_0 = P_0 / P_0* = 1
  trace.values.push_back(b);

  // Moebius step on the circle: b_{j+1} = (z b_j - conj(a_j)) / (1 - a_j z b_j).
  // Cancellation-free for |z| = 1; the modulus is restored to exactly 1
  // after every step so the drift never compounds.
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> a = model.coefficient(j);
    const std::complex<double> zb = z * b;
    b = (zb - std::conj(a)) / (1.0 - a * zb);
    const double mag = std::sqrt(std::norm(b));
    trace.max_drift = std::max(trace.max_drift, std::abs(mag - 1.0));
    b /= mag;
    trace.values.push_back(b);
  }
  return trace;
}

PolyPairValue poly_pair(const VerblunskyModel& model, std::size_t n, double theta) {
  const std::complex<double> z = std::polar(1.0, theta);
  PolyPairValue v;
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> a = model.coefficient(j);
    const std::complex<double> zphi = z * v.phi;
    v.phi = zphi - std::conj(a) * v.phi_star;
    v.phi_star = v.phi_star - a * zphi;
  }
  return v;
}

std::complex<double> require_unimodular(std::complex<double> beta) {
  const double mag = std::abs(beta);
  if (std::abs(mag - 1.0) > 1e-6)
    throw std::invalid_argument("beta must be unimodular");
  return beta / mag;
}

std::complex<double> popuc_value(const VerblunskyModel& model, std::size_t n,
                                 std::complex<double> beta, double theta) {
  const std::complex<double> b = require_unimodular(beta);
  const PolyPairValue pair = poly_pair(model, n, theta);
  const std::complex<double> z = std::polar(1.0, theta);
  return z * pair.phi - std::conj(b) * pair.phi_star;
}

}  // namespace popuc
