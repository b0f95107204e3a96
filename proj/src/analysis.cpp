#include "popuc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "popuc/verblunsky.hpp"

namespace popuc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_to_period(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}
}  // namespace

SpacingReport spacing_report(const ZeroSet& zeros, std::optional<double> p,
                             std::optional<double> f_at_n) {
  const std::size_t count = zeros.thetas.size();
  if (count == 0) throw std::invalid_argument("spacing_report needs a non-empty zero set");
  SpacingReport report;
  report.n_plus_1 = count;
  report.gaps.resize(count);
  for (std::size_t j = 0; j + 1 < count; ++j)
    report.gaps[j] = zeros.thetas[j + 1] - zeros.thetas[j];
  report.gaps[count - 1] = zeros.thetas.front() + kTwoPi - zeros.thetas.back();
  const auto [lo, hi] = std::minmax_element(report.gaps.begin(), report.gaps.end());
  report.min_gap = *lo;
  report.max_gap = *hi;

  const double n = static_cast<double>(count) - 1.0;
  if (p) {
    if (*p <= 1.0) throw std::invalid_argument("spacing scale needs p > 1");
    report.scaled_p = std::pow(n, 1.0 / *p) * report.max_gap;
  }
  if (f_at_n) {
    if (*f_at_n <= 0.0) throw std::invalid_argument("spacing scale needs f(n) > 0");
    report.scaled_f = n / *f_at_n * report.max_gap;
  }
  return report;
}

CountingMeasure counting_measure(const ZeroSet& zeros) {
  CountingMeasure nu;
  nu.n = zeros.thetas.size();
  nu.thetas = zeros.thetas;
  return nu;
}

MeasureReport interval_weight(const CountingMeasure& measure, double phi, double delta,
                              double r) {
  if (!(delta > 0.0) || delta > kTwoPi)
    throw std::invalid_argument("interval length must lie in (0, 2*pi]");
  if (measure.n == 0) throw std::invalid_argument("empty counting measure");
  std::size_t inside = 0;
  for (double t : measure.thetas)
    if (delta == kTwoPi || wrap_to_period(t - phi) < delta) ++inside;
  MeasureReport report;
  report.phi = phi;
  report.delta = delta;
  report.weight = static_cast<double>(inside) / static_cast<double>(measure.n);
  report.r = r;
  report.band_low = std::max(0.0, delta / kTwoPi - r);
  report.band_high = std::min(1.0, delta / kTwoPi + r);
  return report;
}

std::vector<SweepRow> gap_scaling_sweep(const VerblunskyModel& model,
                                        const BetaSchedule& beta_for_n, double p,
                                        const std::vector<std::size_t>& n_list,
                                        double tol_theta) {
  if (p <= 1.0) throw std::invalid_argument("gap scaling sweep needs p > 1");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("n_list must be strictly increasing");
  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (std::size_t n : n_list) {
    const ZeroSet zeros = find_zeros(model, n, beta_for_n(n), tol_theta);
    const SpacingReport spacing = spacing_report(zeros, p);
    SweepRow row;
    row.n = n;
    row.max_gap = spacing.max_gap;
    row.scaled = *spacing.scaled_p;
    row.lp = lp_norm(model, n, p);
    rows.push_back(row);
  }
  return rows;
}

WeakTypeResult weak_type_check(const VerblunskyModel& model, const ZeroSet& zeros) {
  const std::size_t n = zeros.n_plus_1 - 1;
  if (n < 1) throw std::invalid_argument("weak_type_check needs n >= 1");
  WeakTypeResult result;

  const RearrangementReport rearranged = decreasing_rearrangement(model, n);
  result.f_n = rearranged.partial_sums.back();

  // Decay sanity: the moduli over the last tenth of the index range should
  // have dropped well below the overall peak.
  double tail_max = 0.0;
  for (std::size_t j = (9 * n) / 10; j < n; ++j)
    tail_max = std::max(tail_max, std::abs(model.coefficient(j)));
  const double global_max = rearranged.sorted_moduli.front();
  result.decay_warning = global_max > 0.0 && !(tail_max < 0.5 * global_max);

  result.max_gap = spacing_report(zeros).max_gap;

  double f_n = result.f_n;
  if (f_n == 0.0) {
    result.zero_f_warning = true;
    f_n = std::numeric_limits<double>::epsilon();
  }
  result.value = static_cast<double>(n) / f_n * result.max_gap;
  return result;
}

WeakTypeResult weak_type_check(const VerblunskyModel& model, std::complex<double> beta,
                               std::size_t n, double tol_theta) {
  if (n < 1) throw std::invalid_argument("weak_type_check needs n >= 1");
  return weak_type_check(model, find_zeros(model, n, beta, tol_theta));
}

MhaskarSaffReport mhaskar_saff_check(const VerblunskyModel& model, const ZeroSet& zeros,
                                     const std::vector<IntervalSpec>& grid) {
  MhaskarSaffReport report;
  report.r = cesaro_mean(model, zeros.n_plus_1).mean_modulus;
  const CountingMeasure nu = counting_measure(zeros);

  report.rows.reserve(grid.size());
  for (const IntervalSpec& spec : grid) {
    const MeasureReport row = interval_weight(nu, spec.phi, spec.delta, report.r);
    const double violation =
        std::max({0.0, row.band_low - row.weight, row.weight - row.band_high});
    report.worst_violation = std::max(report.worst_violation, violation);
    report.rows.push_back(row);
  }
  return report;
}

MhaskarSaffReport mhaskar_saff_check(const VerblunskyModel& model,
                                     std::complex<double> beta, std::size_t n,
                                     const std::vector<IntervalSpec>& grid,
                                     double tol_theta) {
  if (n < 1) throw std::invalid_argument("mhaskar_saff_check needs n >= 1");
  // nu_n has n atoms: the zeros of the degree-n paraorthogonal polynomial,
  // i.e. a ZeroSet built at degree index n-1.
  return mhaskar_saff_check(model, find_zeros(model, n - 1, beta, tol_theta), grid);
}

}  // namespace popuc
