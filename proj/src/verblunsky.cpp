#include "popuc/verblunsky.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace popuc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kPhaseStream = 0xa5a5a5a55a5a5a5aull;

// SplitMix64 output function.  state_k = seed + k*gamma is a counter, so
// the k-th deviate is addressable directly: same (seed, k) -> same value.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double unit_deviate(std::uint64_t seed, std::uint64_t k) {
  return static_cast<double>(mix64(seed + k * kGamma) >> 11) * 0x1.0p-53;
}

std::complex<double> apply_phase(double modulus, PhaseRule rule, std::uint64_t seed,
                                 std::size_t j) {
  if (rule == PhaseRule::Positive) return {modulus, 0.0};
  if (rule == PhaseRule::Alternating) return {(j % 2 == 0) ? modulus : -modulus, 0.0};
  return std::polar(modulus, kTwoPi * unit_deviate(seed ^ kPhaseStream, j + 1));
}

}  // namespace

VerblunskyModel VerblunskyModel::zero() {
  VerblunskyModel m;
  m.kind_ = ModelKind::Zero;
  return m;
}

VerblunskyModel VerblunskyModel::constant(std::complex<double> alpha) {
  if (std::abs(alpha) >= 1.0)
    throw std::invalid_argument("constant coefficient must lie strictly inside the unit disk");
  VerblunskyModel m;
  m.kind_ = ModelKind::Constant;
  m.alpha_ = alpha;
  return m;
}

VerblunskyModel VerblunskyModel::power_decay(double amplitude, double exponent,
                                             PhaseRule rule, std::uint64_t seed) {
  if (amplitude <= 0.0)
    throw std::invalid_argument("power decay amplitude must be positive");
  if (exponent <= 0.0 || exponent > 1.0)
    throw std::invalid_argument("power decay exponent must lie in (0, 1]");
  if (amplitude / std::pow(2.0, exponent) >= 1.0)
    throw std::invalid_argument("power decay first coefficient A/2^q must be below 1");
  VerblunskyModel m;
  m.kind_ = ModelKind::PowerDecay;
  m.amplitude_ = amplitude;
  m.exponent_ = exponent;
  m.phase_rule_ = rule;
  m.seed_ = seed;
  return m;
}

VerblunskyModel VerblunskyModel::log_decay(double amplitude, PhaseRule rule,
                                           std::uint64_t seed) {
  if (amplitude <= 0.0)
    throw std::invalid_argument("log decay amplitude must be positive");
  if (amplitude / std::log(2.0) >= 1.0)
    throw std::invalid_argument("log decay first coefficient A/log 2 must be below 1");
  VerblunskyModel m;
  m.kind_ = ModelKind::LogDecay;
  m.amplitude_ = amplitude;
  m.phase_rule_ = rule;
  m.seed_ = seed;
  return m;
}

VerblunskyModel VerblunskyModel::iid_uniform_disk(double radius, std::uint64_t seed) {
  if (radius <= 0.0 || radius >= 1.0)
    throw std::invalid_argument("disk radius must lie in (0, 1)");
  VerblunskyModel m;
  m.kind_ = ModelKind::IIDUniformDisk;
  m.radius_ = radius;
  m.seed_ = seed;
  return m;
}

VerblunskyModel VerblunskyModel::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file: " + path);
  VerblunskyModel m;
  m.kind_ = ModelKind::FromFile;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re, im;
    if (!(ls >> re)) continue;  // blank or comment-only line
    if (!(ls >> im))
      throw std::invalid_argument("coefficient file line " + std::to_string(lineno) +
                                  ": expected two floats \"re im\"");
    const std::complex<double> a{re, im};
    if (std::abs(a) >= 1.0)
      throw std::invalid_argument("coefficient file line " + std::to_string(lineno) +
                                  ": modulus must be below 1");
    m.file_coeffs_.push_back(a);
  }
  return m;
}

std::complex<double> VerblunskyModel::coefficient(std::size_t j) const {
  switch (kind_) {
    case ModelKind::Zero:
      return {0.0, 0.0};
    case ModelKind::Constant:
      return alpha_;
    case ModelKind::PowerDecay:
      return apply_phase(amplitude_ / std::pow(static_cast<double>(j) + 2.0, exponent_),
                         phase_rule_, seed_, j);
    case ModelKind::LogDecay:
      return apply_phase(amplitude_ / std::log(static_cast<double>(j) + 2.0),
                         phase_rule_, seed_, j);
    case ModelKind::IIDUniformDisk: {
      // sqrt(u) radial profile gives the uniform law on the disk of
      // radius rho; two counter deviates per index keep evaluation
      // order-independent.
      const double u = unit_deviate(seed_, 2 * j + 1);
      const double v = unit_deviate(seed_, 2 * j + 2);
      return std::polar(radius_ * std::sqrt(u), kTwoPi * v);
    }
    case ModelKind::FromFile:
      if (j >= file_coeffs_.size())
        throw std::out_of_range("coefficient index out of range");
      return file_coeffs_[j];
  }
  throw std::logic_error("unreachable model kind");
}

RearrangementReport decreasing_rearrangement(const VerblunskyModel& model, std::size_t n) {
  if (n < 1) throw std::invalid_argument("rearrangement needs n >= 1");
  RearrangementReport report;
  report.n = n;
  report.sorted_moduli.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    report.sorted_moduli[j] = std::abs(model.coefficient(j));
  std::stable_sort(report.sorted_moduli.begin(), report.sorted_moduli.end(),
                   std::greater<double>());
  report.partial_sums.resize(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += report.sorted_moduli[j];
    report.partial_sums[j] = acc;
  }
  return report;
}

CesaroStats cesaro_mean(const VerblunskyModel& model, std::size_t n) {
  if (n < 1) throw std::invalid_argument("Cesaro mean needs n >= 1");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += std::abs(model.coefficient(j));
  return {n, acc / static_cast<double>(n)};
}

double lp_norm(const VerblunskyModel& model, std::size_t n, double p) {
  if (n < 1) throw std::invalid_argument("lp norm needs n >= 1");
  if (p < 1.0) throw std::invalid_argument("lp norm needs p >= 1");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    acc += std::pow(std::abs(model.coefficient(j)), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace popuc
