#pragma once

#include <complex>
#include <vector>

#include "popuc/verblunsky.hpp"

namespace popuc {

/// Values b_0(e^{it}), ..., b_n(e^{it}) of the Blaschke quotients
/// b_j = P_j / P_j* along the degree recursion, each renormalized to
/// unit modulus.  max_drift records the largest |.|-deviation from 1
/// observed before renormalization.
struct BlaschkeTrace {
  double theta = 0.0;
  std::vector<std::complex<double>> values;
  double max_drift = 0.0;
};

BlaschkeTrace blaschke_trace(const VerblunskyModel& model, std::size_t n, double theta);

/// Pointwise values (P_n, P_n*) at e^{it} from the coupled recursion
///   P_{j+1}  = z P_j - conj(a_j) P_j*,
///   P*_{j+1} = P_j* - a_j z P_j,
/// starting from (1, 1).  On |z| = 1, |P_n| = |P_n*|.
struct PolyPairValue {
  std::complex<double> phi{1.0, 0.0};
  std::complex<double> phi_star{1.0, 0.0};
};

PolyPairValue poly_pair(const VerblunskyModel& model, std::size_t n, double theta);

/// Normalizes beta to exact unit modulus; throws std::invalid_argument
/// if | |beta| - 1 | > 1e-6.
std::complex<double> require_unimodular(std::complex<double> beta);

/// Value of the degree-(n+1) paraorthogonal polynomial
///   z P_n(z) - conj(beta) P_n*(z)   at z = e^{it}.
std::complex<double> popuc_value(const VerblunskyModel& model, std::size_t n,
                                 std::complex<double> beta, double theta);

}  // namespace popuc
