#include "popuc/prufer.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace popuc {

// Streams the Moebius recursion through c_j = e^{i t} b_j(e^{i t}), the
// running boundary value with c_0 = e^{i t}:
//
//   summand_j = arg(1 - a_j c_j),   c_{j+1} = z (c_j - conj(a_j)) / (1 - a_j c_j).
//
// |a_j c_j| < 1 keeps 1 - a_j c_j in the open right half-plane, so every
// summand is strictly inside (-pi/2, pi/2) and the principal branch never
// jumps.  c is renormalized to unit modulus after every step.

double PhaseEvaluator::phase(double theta) const {
  const std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> c = z;
  double arg_sum = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const std::complex<double> a = model_.coefficient(j);
    if (a.real() != 0.0 || a.imag() != 0.0) {
      const std::complex<double> w = 1.0 - a * c;
      const double term = std::atan2(w.imag(), w.real());
      assert(std::abs(term) <= std::asin(std::abs(a)) + 1e-14);
      arg_sum += term;
      c = z * (c - std::conj(a)) / w;
    } else {
      c *= z;
    }
    c /= std::sqrt(std::norm(c));
  }
  return static_cast<double>(n_ + 1) * theta - 2.0 * arg_sum;
}

double PhaseEvaluator::phase_increment(double a, double b) const {
  if (a > b) throw std::invalid_argument("phase_increment needs a <= b");
  return phase(b) - phase(a);
}

PhaseEvaluator::Terms PhaseEvaluator::phase_terms(double theta) const {
  Terms terms;
  terms.linear = static_cast<double>(n_ + 1) * theta;
  terms.args.reserve(n_);
  const std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> c = z;
  for (std::size_t j = 0; j < n_; ++j) {
    const std::complex<double> a = model_.coefficient(j);
    const std::complex<double> w = 1.0 - a * c;
    terms.args.push_back(std::atan2(w.imag(), w.real()));
    c = z * (c - std::conj(a)) / w;
    c /= std::sqrt(std::norm(c));
  }
  terms.boundary = c;
  return terms;
}

}  // namespace popuc
