#include "popuc/zerofinder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "popuc/opuc.hpp"
#include "popuc/parallel.hpp"
#include "popuc/prufer.hpp"

namespace popuc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Forgives phase rounding at a bracket endpoint that sits on a zero;
// anything larger is a genuine bracket failure.
constexpr double kEndpointPhaseSlack = 1e-7;

void check_tol(double tol_theta) {
  if (!(tol_theta > 0.0) || tol_theta > 1e-6)
    throw std::invalid_argument("tol_theta must lie in (0, 1e-6]");
}

[[noreturn]] void bracket_failure(double target, double lo, double hi, double glo,
                                  double ghi) {
  std::ostringstream os;
  os.precision(17);
  os << "zero bracket failed (monotone phase should make this impossible): "
     << "target=" << target << " theta=[" << lo << ", " << hi << "] "
     << "phase-target=[" << glo << ", " << ghi << "]";
  throw std::runtime_error(os.str());
}

// Bisects eta(theta) = target inside [lo, hi]; glo/ghi are eta-target at
// the endpoints, glo <= 0 <= ghi up to rounding slack.
//
// The bracket is refined to width tol_theta, and then further until the
// phase residual drops to kPhaseResidualTarget or the bracket cannot be
// split at double resolution.  Where the phase slope is exponentially
// large (strongly random coefficients), the residual floor is
// slope * ulp(theta) and that is the best any double-valued theta can do.
double bisect_target(const PhaseEvaluator& eval, double target, double lo, double hi,
                     double glo, double ghi, double tol_theta) {
  constexpr double kPhaseResidualTarget = 1e-10;
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (glo > 0.0) {
    if (glo <= kEndpointPhaseSlack) return lo;
    bracket_failure(target, lo, hi, glo, ghi);
  }
  if (ghi < 0.0) {
    if (-ghi <= kEndpointPhaseSlack) return hi;
    bracket_failure(target, lo, hi, glo, ghi);
  }
  while (hi - lo > tol_theta || std::min(-glo, ghi) > kPhaseResidualTarget) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket hit one ULP
    const double gm = eval.phase(mid) - target;
    if (gm == 0.0) return mid;
    if (gm < 0.0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  return (-glo <= ghi) ? lo : hi;
}

// First phase target >= eta(0) in the residue class arg(conj(beta)) mod 2*pi.
// The n+1 targets base + 2*pi*k, k = 0..n, are exactly the zeros' phases.
double first_target(double eta0, std::complex<double> beta) {
  const double residue = std::arg(std::conj(beta));
  const double k = std::ceil((eta0 - residue) / kTwoPi);
  return residue + kTwoPi * k;
}

// Wraps near-2*pi seam zeros to 0 and restores sorted order.
void canonicalize(ZeroSet& zeros, double tol_theta) {
  for (double& t : zeros.thetas) {
    if (t >= kTwoPi - tol_theta) t = 0.0;
    if (t < 0.0) t = 0.0;
  }
  std::vector<std::size_t> order(zeros.thetas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return zeros.thetas[a] < zeros.thetas[b];
  });
  ZeroSet sorted = zeros;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.thetas[i] = zeros.thetas[order[i]];
    sorted.residuals[i] = zeros.residuals[order[i]];
  }
  zeros = std::move(sorted);
}

void attach_residuals(ZeroSet& zeros, const VerblunskyModel& model, std::size_t n) {
  const long long count = static_cast<long long>(zeros.thetas.size());
  zeros.residuals.resize(zeros.thetas.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads())
#endif
  for (long long k = 0; k < count; ++k)
    zeros.residuals[k] = std::abs(popuc_value(model, n, zeros.beta, zeros.thetas[k]));
}

}  // namespace

ZeroSet find_zeros(const VerblunskyModel& model, std::size_t n,
                   std::complex<double> beta, double tol_theta) {
  check_tol(tol_theta);
  ZeroSet zeros;
  zeros.beta = require_unimodular(beta);
  zeros.n_plus_1 = n + 1;
  zeros.thetas.resize(n + 1);

  const PhaseEvaluator eval(model, n);

  // Coarse scan of the monotone phase; 4 grid cells per zero is enough
  // to hand every bisection a tight private bracket.
  const std::size_t cells = 4 * (n + 1);
  std::vector<double> grid_phase(cells + 1);
  const long long grid_count = static_cast<long long>(cells);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads())
#endif
  for (long long i = 0; i <= grid_count; ++i)
    grid_phase[i] = eval.phase(kTwoPi * static_cast<double>(i) / static_cast<double>(cells));

  const double base = first_target(grid_phase[0], zeros.beta);
  const long long targets = static_cast<long long>(n) + 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(effective_threads())
#endif
  for (long long k = 0; k < targets; ++k) {
    const double target = base + kTwoPi * static_cast<double>(k);
    // grid_phase is increasing; find the cell containing the target.
    auto it = std::upper_bound(grid_phase.begin(), grid_phase.end(), target);
    std::size_t hi_idx = static_cast<std::size_t>(it - grid_phase.begin());
    if (hi_idx == 0) hi_idx = 1;
    if (hi_idx > cells) hi_idx = cells;
    const std::size_t lo_idx = hi_idx - 1;
    const double lo = kTwoPi * static_cast<double>(lo_idx) / static_cast<double>(cells);
    const double hi = kTwoPi * static_cast<double>(hi_idx) / static_cast<double>(cells);
    zeros.thetas[k] = bisect_target(eval, target, lo, hi, grid_phase[lo_idx] - target,
                                    grid_phase[hi_idx] - target, tol_theta);
  }

  attach_residuals(zeros, model, n);
  canonicalize(zeros, tol_theta);
  return zeros;
}

ZeroSet find_zeros_serial(const VerblunskyModel& model, std::size_t n,
                          std::complex<double> beta, double tol_theta) {
  check_tol(tol_theta);
  ZeroSet zeros;
  zeros.beta = require_unimodular(beta);
  zeros.n_plus_1 = n + 1;
  zeros.thetas.resize(n + 1);

  const PhaseEvaluator eval(model, n);
  const double eta0 = eval.phase(0.0);
  const double eta_end = eval.phase(kTwoPi);
  const double base = first_target(eta0, zeros.beta);

  // Targets are increasing, so the previous zero is a valid left bracket
  // endpoint for the next one.
  double lo = 0.0;
  double glo = eta0 - base;
  for (std::size_t k = 0; k <= n; ++k) {
    const double target = base + kTwoPi * static_cast<double>(k);
    const double theta =
        bisect_target(eval, target, lo, kTwoPi, glo, eta_end - target, tol_theta);
    zeros.thetas[k] = theta;
    lo = theta;
    glo = -kTwoPi;  // phase(previous zero) - next target
  }

  attach_residuals(zeros, model, n);
  canonicalize(zeros, tol_theta);
  return zeros;
}

long long count_zeros_in(const VerblunskyModel& model, std::size_t n,
                         std::complex<double> beta, double a, double b) {
  if (b < a) throw std::invalid_argument("count_zeros_in needs a <= b");
  if (b > a + kTwoPi * (1.0 + 1e-12))
    throw std::invalid_argument("count_zeros_in needs b <= a + 2*pi");
  const std::complex<double> bn = require_unimodular(beta);
  const PhaseEvaluator eval(model, n);
  const double residue = std::arg(std::conj(bn));
  const double eta_a = eval.phase(a);
  const double eta_b = eval.phase(b);
  // Zeros in [a, b) <-> targets in [eta(a), eta(b)).  The 1e-9 fuzz keeps
  // a target sitting exactly on an endpoint on the closed-left side
  // instead of letting the last rounding of the division decide.
  const auto count_below = [&](double eta) {
    return static_cast<long long>(std::ceil((eta - residue) / kTwoPi - 1e-9));
  };
  return count_below(eta_b) - count_below(eta_a);
}

namespace {

// Coefficient vectors (ascending powers) of the pair (P_n, P_n*), then the
// paraorthogonal combination z P_n - conj(beta) P_n*.  Degree stays small
// (oracle path, n <= 50), so the O(n^2) build is irrelevant.
std::vector<std::complex<double>> popuc_coefficients(const VerblunskyModel& model,
                                                     std::size_t n,
                                                     std::complex<double> beta) {
  std::vector<std::complex<double>> phi{1.0}, star{1.0};
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> a = model.coefficient(j);
    std::vector<std::complex<double>> next_phi(j + 2), next_star(j + 2);
    for (std::size_t k = 0; k <= j; ++k) {
      next_phi[k + 1] += phi[k];                  // z * P_j
      next_phi[k] -= std::conj(a) * star[k];      // - conj(a_j) P_j*
      next_star[k] += star[k];                    // P_j*
      next_star[k + 1] -= a * phi[k];             // - a_j z P_j
    }
    phi = std::move(next_phi);
    star = std::move(next_star);
  }
  std::vector<std::complex<double>> p(n + 2);
  for (std::size_t k = 0; k <= n; ++k) {
    p[k + 1] += phi[k];
    p[k] -= std::conj(beta) * star[k];
  }
  return p;  // monic, degree n+1
}

std::complex<double> horner(const std::vector<std::complex<double>>& coeffs,
                            std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

// Simultaneous-update Durand-Kerner sweep.  Initial guesses sit equally
// spaced on a circle strictly outside all roots, rotated off the real
// axis so conjugate-symmetric polynomials cannot stall the iteration.
std::vector<std::complex<double>> durand_kerner(
    const std::vector<std::complex<double>>& coeffs, double guess_radius) {
  const std::size_t degree = coeffs.size() - 1;
  std::vector<std::complex<double>> roots(degree);
  for (std::size_t i = 0; i < degree; ++i)
    roots[i] = std::polar(guess_radius,
                          kTwoPi * static_cast<double>(i) / static_cast<double>(degree) + 0.4);

  constexpr int kMaxSweeps = 10000;
  constexpr double kUpdateTol = 1e-13;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_update = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < degree; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const std::complex<double> delta = horner(coeffs, roots[i]) / denom;
      roots[i] -= delta;
      max_update = std::max(max_update, std::abs(delta));
    }
    if (max_update < kUpdateTol) return roots;
  }
  throw std::runtime_error("oracle root iteration did not converge in 10000 sweeps");
}

}  // namespace

ZeroSet oracle_zeros(const VerblunskyModel& model, std::size_t n,
                     std::complex<double> beta) {
  if (n > 50) throw std::invalid_argument("oracle_zeros supports n <= 50");
  ZeroSet zeros;
  zeros.beta = require_unimodular(beta);
  zeros.n_plus_1 = n + 1;

  double max_mod = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    max_mod = std::max(max_mod, std::abs(model.coefficient(j)));

  const auto coeffs = popuc_coefficients(model, n, zeros.beta);
  const auto roots = durand_kerner(coeffs, 1.0 + max_mod);

  zeros.thetas.reserve(roots.size());
  for (const auto& root : roots) {
    double t = std::arg(root);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    zeros.thetas.push_back(t);
  }
  std::sort(zeros.thetas.begin(), zeros.thetas.end());
  zeros.residuals.resize(zeros.thetas.size());
  for (std::size_t k = 0; k < zeros.thetas.size(); ++k)
    zeros.residuals[k] = std::abs(popuc_value(model, n, zeros.beta, zeros.thetas[k]));
  return zeros;
}

}  // namespace popuc
