#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "popuc/verblunsky.hpp"

namespace popuc::cli {

/// Parsed command line.  Round-trips losslessly through JSON.
struct RunConfig {
  std::string subcommand;

  // model spec
  std::string model = "zero";  // zero|constant|power|log|iid|file
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  double amplitude = 0.5;  // power/log A
  double exponent = 1.0;   // power q
  double rho = 0.5;        // iid radius
  std::uint64_t seed = 0;
  std::string coeff_path;
  std::string phases = "positive";  // positive|alternating|random

  // shared run parameters
  std::size_t n = 0;
  std::vector<std::size_t> n_list;
  double beta_arg = 0.0;
  double beta_step = 0.0;  // sweep: arg beta_n = beta_arg + beta_step * n
  double tol_theta = 1e-12;
  std::string format = "csv";  // csv|json
  std::string out;             // empty -> stdout

  // zeros: window mode counts zeros in [a, b) instead of locating them
  std::optional<double> window_a;
  std::optional<double> window_b;

  // spacing
  std::optional<double> p;
  bool weak_type = false;
  int histogram_bins = 0;
  std::string hist_out;

  // measure
  double phi = 0.0;
  double delta = 0.0;
  std::optional<double> r_override;

  // mhaskar-saff
  int grid = 0;
  int random_intervals = 0;
  std::uint64_t interval_seed = 1;

  bool operator==(const RunConfig&) const = default;
};

std::string to_json_string(const RunConfig& config);
RunConfig from_json_string(const std::string& text);

VerblunskyModel make_model(const RunConfig& config);

/// Executes a parsed config.  Output goes to config.out (written
/// atomically) or to stdout_stream when out is empty.  Throws
/// std::invalid_argument on config errors, std::runtime_error on
/// numerical failures.
void run(const RunConfig& config, std::ostream& stdout_stream);

/// Full command-line entry point.  Exit codes: 0 success, 1 argument
/// errors, 2 numerical failures.
int main_with_args(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err);

/// operation name -> the subcommand designated to exercise it.
const std::map<std::string, std::string>& operation_coverage();

}  // namespace popuc::cli
