#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "popuc/verblunsky.hpp"

namespace popuc {

/// Evaluates the Pruefer phase eta_n of the Blaschke quotient b_n:
///
///   eta_n(t) = (n+1) t - 2 sum_{j=0}^{n-1} arg[1 - a_j e^{i t} b_j(e^{i t})]
///
/// with arg the principal branch.  Each summand lies strictly in
/// (-pi/2, pi/2), so no unwrapping is ever needed, and
/// e^{i eta_n(t)} = e^{i t} b_n(e^{i t}) with eta_0(t) = t.
/// eta_n is strictly increasing and gains 2(n+1)pi per period.
///
/// One evaluation costs O(n); the evaluator is immutable and safe for
/// unrestricted concurrent reads.
class PhaseEvaluator {
 public:
  PhaseEvaluator(VerblunskyModel model, std::size_t n)
      : model_(std::move(model)), n_(n) {}

  double phase(double theta) const;

  /// phase(b) - phase(a); requires a <= b.
  double phase_increment(double a, double b) const;

  struct Terms {
    double linear = 0.0;              // (n+1) t
    std::vector<double> args;         // per-step principal args
    std::complex<double> boundary{1.0, 0.0};  // e^{i t} b_n(e^{i t})
  };

  /// Decomposition of phase(theta) for diagnostic / invariant checks:
  /// phase = linear - 2 * sum(args), |args[j]| <= arcsin |a_j|.
  Terms phase_terms(double theta) const;

  std::size_t degree() const { return n_; }
  const VerblunskyModel& model() const { return model_; }

 private:
  VerblunskyModel model_;
  std::size_t n_;
};

}  // namespace popuc
