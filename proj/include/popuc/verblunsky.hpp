#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace popuc {

enum class ModelKind { Zero, Constant, PowerDecay, LogDecay, IIDUniformDisk, FromFile };

// Phase rule for the decay models whose definition constrains only the moduli.
enum class PhaseRule { Positive, Alternating, RandomPhase };

/// A rule producing reflection coefficients a_0, a_1, ... with |a_j| < 1.
/// Evaluation is pure: the same (model, j) always yields the same value,
/// regardless of call order (random models derive a_j from (seed, j)).
class VerblunskyModel {
 public:
  static VerblunskyModel zero();
  static VerblunskyModel constant(std::complex<double> alpha);
  static VerblunskyModel power_decay(double amplitude, double exponent,
                                     PhaseRule rule = PhaseRule::Positive,
                                     std::uint64_t seed = 0);
  static VerblunskyModel log_decay(double amplitude,
                                   PhaseRule rule = PhaseRule::Positive,
                                   std::uint64_t seed = 0);
  static VerblunskyModel iid_uniform_disk(double radius, std::uint64_t seed);
  static VerblunskyModel from_file(const std::string& path);

  std::complex<double> coefficient(std::size_t j) const;

  ModelKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t file_length() const { return file_coeffs_.size(); }

 private:
  VerblunskyModel() = default;

  ModelKind kind_ = ModelKind::Zero;
  std::complex<double> alpha_{0.0, 0.0};  // Constant
  double amplitude_ = 0.0;                // PowerDecay / LogDecay
  double exponent_ = 1.0;                 // PowerDecay
  double radius_ = 0.0;                   // IIDUniformDisk
  std::uint64_t seed_ = 0;
  PhaseRule phase_rule_ = PhaseRule::Positive;
  std::vector<std::complex<double>> file_coeffs_;
};

struct RearrangementReport {
  std::size_t n = 0;
  std::vector<double> sorted_moduli;  // non-increasing
  std::vector<double> partial_sums;   // partial_sums[N] = sum of the N+1 largest moduli
};

struct CesaroStats {
  std::size_t n = 0;
  double mean_modulus = 0.0;
};

/// Moduli of the first n coefficients sorted non-increasingly (stable:
/// ties keep original index order), with the running partial sums.
RearrangementReport decreasing_rearrangement(const VerblunskyModel& model, std::size_t n);

CesaroStats cesaro_mean(const VerblunskyModel& model, std::size_t n);

/// (sum_{j<n} |a_j|^p)^(1/p), p >= 1.
double lp_norm(const VerblunskyModel& model, std::size_t n, double p);

}  // namespace popuc
