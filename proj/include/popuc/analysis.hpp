#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "popuc/zerofinder.hpp"

namespace popuc {

/// Consecutive-gap statistics of a zero set.  The gap list always
/// includes the wraparound gap theta_1 + 2*pi - theta_{n+1}, so the
/// gaps sum to 2*pi.
struct SpacingReport {
  std::size_t n_plus_1 = 0;
  double max_gap = 0.0;
  double min_gap = 0.0;
  std::vector<double> gaps;
  std::optional<double> scaled_p;  // n^{1/p} * max_gap
  std::optional<double> scaled_f;  // (n / f(n)) * max_gap
};

SpacingReport spacing_report(const ZeroSet& zeros,
                             std::optional<double> p = std::nullopt,
                             std::optional<double> f_at_n = std::nullopt);

/// Uniform atomic probability measure on the zero angles.  By the
/// counting-measure convention nu_n carries n atoms, i.e. it is built
/// from the zeros of the degree-n paraorthogonal polynomial; callers
/// holding a ZeroSet from degree index m pass it here and get
/// n = m + 1 atoms.  This adapter is the one place the two indexings
/// meet.
struct CountingMeasure {
  std::size_t n = 0;
  std::vector<double> thetas;  // sorted, in [0, 2*pi)
};

CountingMeasure counting_measure(const ZeroSet& zeros);

/// nu-weight of the half-open arc [phi, phi+delta) mod 2*pi (atoms on
/// the left endpoint counted), with the distribution band
/// [delta/2pi - r, delta/2pi + r] clipped to [0, 1].
struct MeasureReport {
  double phi = 0.0;
  double delta = 0.0;
  double weight = 0.0;
  double band_low = 0.0;
  double band_high = 1.0;
  double r = 0.0;
};

MeasureReport interval_weight(const CountingMeasure& measure, double phi,
                              double delta, double r);

using BetaSchedule = std::function<std::complex<double>(std::size_t n)>;

struct SweepRow {
  std::size_t n = 0;
  double max_gap = 0.0;
  double scaled = 0.0;  // n^{1/p} * max_gap
  double lp = 0.0;      // lp_norm(model, n, p), reported alongside
};

/// One row per n in n_list, exhibiting the n^{1/p}-scaled largest gap.
std::vector<SweepRow> gap_scaling_sweep(const VerblunskyModel& model,
                                        const BetaSchedule& beta_for_n, double p,
                                        const std::vector<std::size_t>& n_list,
                                        double tol_theta = kDefaultTolTheta);

/// (n / f(n)) * max_gap with f(n) the partial sum of the decreasing
/// rearrangement of the first n moduli.
struct WeakTypeResult {
  double value = 0.0;
  double f_n = 0.0;
  double max_gap = 0.0;
  bool decay_warning = false;   // coefficients do not appear to decay
  bool zero_f_warning = false;  // f(n) == 0; epsilon substituted
};

WeakTypeResult weak_type_check(const VerblunskyModel& model, std::complex<double> beta,
                               std::size_t n, double tol_theta = kDefaultTolTheta);

/// Same check against an already-computed zero set (n = zeros.n_plus_1 - 1).
WeakTypeResult weak_type_check(const VerblunskyModel& model, const ZeroSet& zeros);

struct IntervalSpec {
  double phi = 0.0;
  double delta = 0.0;
};

/// Worst amount by which any interval weight of nu_n leaves the band
/// [delta/2pi - r, delta/2pi + r], with r the finite-n Cesaro mean of
/// the coefficient moduli.  0 means every interval stayed inside.
struct MhaskarSaffReport {
  double r = 0.0;
  double worst_violation = 0.0;
  std::vector<MeasureReport> rows;
};

MhaskarSaffReport mhaskar_saff_check(const VerblunskyModel& model,
                                     std::complex<double> beta, std::size_t n,
                                     const std::vector<IntervalSpec>& grid,
                                     double tol_theta = kDefaultTolTheta);

/// Same check against an already-computed zero set (n = zeros.n_plus_1 atoms).
MhaskarSaffReport mhaskar_saff_check(const VerblunskyModel& model, const ZeroSet& zeros,
                                     const std::vector<IntervalSpec>& grid);

}  // namespace popuc
