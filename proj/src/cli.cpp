#include "popuc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "popuc/analysis.hpp"
#include "popuc/io.hpp"
#include "popuc/opuc.hpp"
#include "popuc/parallel.hpp"
#include "popuc/prufer.hpp"
#include "popuc/zerofinder.hpp"

namespace popuc::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
using ojson = nlohmann::ordered_json;

std::complex<double> beta_of(const RunConfig& config) {
  return std::polar(1.0, config.beta_arg);
}

void emit(const RunConfig& config, std::ostream& stdout_stream,
          const std::string& content) {
  if (config.out.empty())
    stdout_stream << content;
  else
    atomic_write_file(config.out, content);
}

std::string csv_or_json(const RunConfig& config, const std::string& csv,
                        const ojson& json) {
  if (config.format == "csv") return csv;
  return json.dump(2) + "\n";
}

// ---- subcommand bodies ----------------------------------------------------

void run_zeros(const RunConfig& config, std::ostream& stdout_stream) {
  const VerblunskyModel model = make_model(config);
  const std::complex<double> beta = beta_of(config);

  if (config.window_a || config.window_b) {
    if (!config.window_a || !config.window_b)
      throw std::invalid_argument("window mode needs both --a and --b");
    const double a = *config.window_a;
    const double b = *config.window_b;
    const PhaseEvaluator eval(model, config.n);
    const double increment = eval.phase_increment(a, b);
    const long long count = count_zeros_in(model, config.n, beta, a, b);
    std::ostringstream csv;
    csv << "a,b,phase_increment,count\n"
        << fmt17(a) << ',' << fmt17(b) << ',' << fmt17(increment) << ',' << count
        << '\n';
    ojson json{{"a", a}, {"b", b}, {"phase_increment", increment}, {"count", count}};
    emit(config, stdout_stream, csv_or_json(config, csv.str(), json));
    return;
  }

  const ZeroSet zeros = find_zeros(model, config.n, beta, config.tol_theta);
  std::ostringstream csv;
  csv << "j,theta,residual\n";
  ojson rows = ojson::array();
  for (std::size_t j = 0; j < zeros.thetas.size(); ++j) {
    csv << (j + 1) << ',' << fmt17(zeros.thetas[j]) << ',' << fmt17(zeros.residuals[j])
        << '\n';
    rows.push_back(ojson{
        {"j", j + 1}, {"theta", zeros.thetas[j]}, {"residual", zeros.residuals[j]}});
  }
  ojson json{{"n_plus_1", zeros.n_plus_1},
             {"beta_re", zeros.beta.real()},
             {"beta_im", zeros.beta.imag()},
             {"rows", rows}};
  emit(config, stdout_stream, csv_or_json(config, csv.str(), json));
}

void run_spacing(const RunConfig& config, std::ostream& stdout_stream) {
  const VerblunskyModel model = make_model(config);
  const ZeroSet zeros = find_zeros(model, config.n, beta_of(config), config.tol_theta);

  std::optional<double> f_at_n;
  std::optional<WeakTypeResult> weak;
  if (config.weak_type) {
    weak = weak_type_check(model, zeros);
    f_at_n = weak->f_n;
  }
  const SpacingReport report = spacing_report(zeros, config.p, f_at_n);

  const std::size_t n = report.n_plus_1 - 1;
  std::ostringstream csv;
  csv << "n,max_gap,min_gap,scaled_p,scaled_f,f_n\n" << n << ',';
  csv << fmt17(report.max_gap) << ',' << fmt17(report.min_gap) << ',';
  csv << (report.scaled_p ? fmt17(*report.scaled_p) : "") << ',';
  csv << (report.scaled_f ? fmt17(*report.scaled_f) : "") << ',';
  csv << (weak ? fmt17(weak->f_n) : "") << '\n';

  ojson json{{"n", n}, {"max_gap", report.max_gap}, {"min_gap", report.min_gap}};
  json["scaled_p"] = report.scaled_p ? ojson(*report.scaled_p) : ojson(nullptr);
  json["scaled_f"] = report.scaled_f ? ojson(*report.scaled_f) : ojson(nullptr);
  json["f_n"] = weak ? ojson(weak->f_n) : ojson(nullptr);
  if (weak) {
    json["decay_warning"] = weak->decay_warning;
    json["zero_f_warning"] = weak->zero_f_warning;
  }

  std::string body = csv_or_json(config, csv.str(), json);

  if (config.histogram_bins > 0) {
    const int bins = config.histogram_bins;
    std::vector<long long> counts(bins, 0);
    const double width = report.max_gap / bins;
    for (double g : report.gaps) {
      int b = width > 0.0 ? static_cast<int>(g / width) : 0;
      if (b >= bins) b = bins - 1;  // right edge closed
      ++counts[b];
    }
    std::ostringstream hist;
    hist << "bin_lo,bin_hi,count\n";
    for (int b = 0; b < bins; ++b)
      hist << fmt17(b * width) << ',' << fmt17((b + 1) * width) << ',' << counts[b]
           << '\n';
    std::string hist_path = config.hist_out;
    if (hist_path.empty() && !config.out.empty()) hist_path = config.out + ".hist.csv";
    if (hist_path.empty())
      body += "\n" + hist.str();
    else
      atomic_write_file(hist_path, hist.str());
  }

  emit(config, stdout_stream, body);
}

void run_measure(const RunConfig& config, std::ostream& stdout_stream) {
  const VerblunskyModel model = make_model(config);
  if (config.n < 1) throw std::invalid_argument("measure needs --n >= 1 atoms");
  const double r =
      config.r_override ? *config.r_override : cesaro_mean(model, config.n).mean_modulus;
  // nu_n carries n atoms: zeros of the degree-n polynomial, built at
  // degree index n-1.
  const ZeroSet zeros =
      find_zeros(model, config.n - 1, beta_of(config), config.tol_theta);
  const MeasureReport report =
      interval_weight(counting_measure(zeros), config.phi, config.delta, r);

  std::ostringstream csv;
  csv << "n,phi,delta,weight,r,band_low,band_high\n"
      << config.n << ',' << fmt17(report.phi) << ',' << fmt17(report.delta) << ','
      << fmt17(report.weight) << ',' << fmt17(report.r) << ',' << fmt17(report.band_low)
      << ',' << fmt17(report.band_high) << '\n';
  ojson json{{"n", config.n},          {"phi", report.phi},
             {"delta", report.delta},  {"weight", report.weight},
             {"r", report.r},          {"band_low", report.band_low},
             {"band_high", report.band_high}};
  emit(config, stdout_stream, csv_or_json(config, csv.str(), json));
}

void run_sweep(const RunConfig& config, std::ostream& stdout_stream) {
  const VerblunskyModel model = make_model(config);
  if (config.n_list.empty()) throw std::invalid_argument("sweep needs --n-list");
  const double p = config.p.value_or(2.0);
  const double beta_arg = config.beta_arg;
  const double beta_step = config.beta_step;
  const BetaSchedule schedule = [beta_arg, beta_step](std::size_t n) {
    return std::polar(1.0, beta_arg + beta_step * static_cast<double>(n));
  };
  const std::vector<SweepRow> rows =
      gap_scaling_sweep(model, schedule, p, config.n_list, config.tol_theta);

  std::ostringstream csv;
  csv << "n,max_gap,scaled_p,lp_norm\n";
  ojson jrows = ojson::array();
  for (const SweepRow& row : rows) {
    csv << row.n << ',' << fmt17(row.max_gap) << ',' << fmt17(row.scaled) << ','
        << fmt17(row.lp) << '\n';
    jrows.push_back(ojson{{"n", row.n},
                          {"max_gap", row.max_gap},
                          {"scaled_p", row.scaled},
                          {"lp_norm", row.lp}});
  }
  ojson json{{"p", p}, {"rows", jrows}};
  emit(config, stdout_stream, csv_or_json(config, csv.str(), json));
}

std::vector<IntervalSpec> build_interval_grid(const RunConfig& config) {
  std::vector<IntervalSpec> grid;
  for (int k = 0; k < config.grid; ++k) {
    IntervalSpec spec;
    spec.phi = kTwoPi * static_cast<double>(k) / static_cast<double>(config.grid);
    spec.delta = kTwoPi * static_cast<double>((k % 10) + 1) / 12.0;
    grid.push_back(spec);
  }
  if (config.random_intervals > 0) {
    std::mt19937_64 rng(config.interval_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < config.random_intervals; ++k) {
      IntervalSpec spec;
      spec.phi = kTwoPi * u01(rng);
      spec.delta = 0.1 + (kTwoPi - 0.1) * u01(rng);
      grid.push_back(spec);
    }
  }
  if (grid.empty()) throw std::invalid_argument("need --grid and/or --random-intervals");
  return grid;
}

void run_mhaskar_saff(const RunConfig& config, std::ostream& stdout_stream) {
  const VerblunskyModel model = make_model(config);
  if (config.n < 1) throw std::invalid_argument("mhaskar-saff needs --n >= 1 atoms");
  const MhaskarSaffReport report = mhaskar_saff_check(
      model, beta_of(config), config.n, build_interval_grid(config), config.tol_theta);

  std::ostringstream csv;
  csv << "phi,delta,weight,r,band_low,band_high,violation\n";
  ojson jrows = ojson::array();
  for (const MeasureReport& row : report.rows) {
    const double violation =
        std::max({0.0, row.band_low - row.weight, row.weight - row.band_high});
    csv << fmt17(row.phi) << ',' << fmt17(row.delta) << ',' << fmt17(row.weight) << ','
        << fmt17(row.r) << ',' << fmt17(row.band_low) << ',' << fmt17(row.band_high)
        << ',' << fmt17(violation) << '\n';
    jrows.push_back(ojson{{"phi", row.phi},
                          {"delta", row.delta},
                          {"weight", row.weight},
                          {"r", row.r},
                          {"band_low", row.band_low},
                          {"band_high", row.band_high},
                          {"violation", violation}});
  }
  ojson json{
      {"n", config.n}, {"r", report.r}, {"worst_violation", report.worst_violation},
      {"rows", jrows}};
  emit(config, stdout_stream, csv_or_json(config, csv.str(), json));
}

void run_oracle_check(const RunConfig& config, std::ostream& stdout_stream) {
  const VerblunskyModel model = make_model(config);
  const std::complex<double> beta = beta_of(config);
  const ZeroSet found = find_zeros(model, config.n, beta, config.tol_theta);
  const ZeroSet oracle = oracle_zeros(model, config.n, beta);

  std::ostringstream csv;
  csv << "j,theta,theta_oracle,angle_diff,zero_criterion_err\n";
  ojson jrows = ojson::array();
  double max_diff = 0.0;
  double max_criterion = 0.0;
  for (std::size_t j = 0; j < found.thetas.size(); ++j) {
    double diff = std::abs(found.thetas[j] - oracle.thetas[j]);
    diff = std::min(diff, kTwoPi - diff);  // seam-aware
    // zero criterion: e^{i theta} b_n(e^{i theta}) must hit conj(beta)
    const BlaschkeTrace trace = blaschke_trace(model, config.n, found.thetas[j]);
    const std::complex<double> boundary =
        std::polar(1.0, found.thetas[j]) * trace.values.back();
    const double criterion_err = std::abs(boundary - std::conj(found.beta));
    max_diff = std::max(max_diff, diff);
    max_criterion = std::max(max_criterion, criterion_err);
    csv << (j + 1) << ',' << fmt17(found.thetas[j]) << ',' << fmt17(oracle.thetas[j])
        << ',' << fmt17(diff) << ',' << fmt17(criterion_err) << '\n';
    jrows.push_back(ojson{{"j", j + 1},
                          {"theta", found.thetas[j]},
                          {"theta_oracle", oracle.thetas[j]},
                          {"angle_diff", diff},
                          {"zero_criterion_err", criterion_err}});
  }
  ojson json{{"n_plus_1", found.n_plus_1},
             {"max_angle_diff", max_diff},
             {"max_zero_criterion_err", max_criterion},
             {"rows", jrows}};
  emit(config, stdout_stream, csv_or_json(config, csv.str(), json));
}

}  // namespace

VerblunskyModel make_model(const RunConfig& config) {
  PhaseRule rule = PhaseRule::Positive;
  if (config.phases == "alternating")
    rule = PhaseRule::Alternating;
  else if (config.phases == "random")
    rule = PhaseRule::RandomPhase;
  else if (config.phases != "positive")
    throw std::invalid_argument("unknown phase rule: " + config.phases);

  if (config.model == "zero") return VerblunskyModel::zero();
  if (config.model == "constant")
    return VerblunskyModel::constant({config.alpha_re, config.alpha_im});
  if (config.model == "power")
    return VerblunskyModel::power_decay(config.amplitude, config.exponent, rule,
                                        config.seed);
  if (config.model == "log")
    return VerblunskyModel::log_decay(config.amplitude, rule, config.seed);
  if (config.model == "iid")
    return VerblunskyModel::iid_uniform_disk(config.rho, config.seed);
  if (config.model == "file") return VerblunskyModel::from_file(config.coeff_path);
  throw std::invalid_argument("unknown model kind: " + config.model);
}

void run(const RunConfig& config, std::ostream& stdout_stream) {
  if (config.format != "csv" && config.format != "json")
    throw std::invalid_argument("format must be csv or json");
  if (config.subcommand == "zeros")
    run_zeros(config, stdout_stream);
  else if (config.subcommand == "spacing")
    run_spacing(config, stdout_stream);
  else if (config.subcommand == "measure")
    run_measure(config, stdout_stream);
  else if (config.subcommand == "sweep")
    run_sweep(config, stdout_stream);
  else if (config.subcommand == "mhaskar-saff")
    run_mhaskar_saff(config, stdout_stream);
  else if (config.subcommand == "oracle-check")
    run_oracle_check(config, stdout_stream);
  else
    throw std::invalid_argument("unknown subcommand: " + config.subcommand);
}

// ---- config serialization --------------------------------------------------

std::string to_json_string(const RunConfig& c) {
  ojson j{{"subcommand", c.subcommand},
          {"model", c.model},
          {"alpha_re", c.alpha_re},
          {"alpha_im", c.alpha_im},
          {"amplitude", c.amplitude},
          {"exponent", c.exponent},
          {"rho", c.rho},
          {"seed", c.seed},
          {"coeff_path", c.coeff_path},
          {"phases", c.phases},
          {"n", c.n},
          {"n_list", c.n_list},
          {"beta_arg", c.beta_arg},
          {"beta_step", c.beta_step},
          {"tol_theta", c.tol_theta},
          {"format", c.format},
          {"out", c.out},
          {"weak_type", c.weak_type},
          {"histogram_bins", c.histogram_bins},
          {"hist_out", c.hist_out},
          {"phi", c.phi},
          {"delta", c.delta},
          {"grid", c.grid},
          {"random_intervals", c.random_intervals},
          {"interval_seed", c.interval_seed}};
  j["window_a"] = c.window_a ? ojson(*c.window_a) : ojson(nullptr);
  j["window_b"] = c.window_b ? ojson(*c.window_b) : ojson(nullptr);
  j["p"] = c.p ? ojson(*c.p) : ojson(nullptr);
  j["r_override"] = c.r_override ? ojson(*c.r_override) : ojson(nullptr);
  return j.dump(2) + "\n";
}

RunConfig from_json_string(const std::string& text) {
  const ojson j = ojson::parse(text);
  RunConfig c;
  c.subcommand = j.at("subcommand").get<std::string>();
  c.model = j.at("model").get<std::string>();
  c.alpha_re = j.at("alpha_re").get<double>();
  c.alpha_im = j.at("alpha_im").get<double>();
  c.amplitude = j.at("amplitude").get<double>();
  c.exponent = j.at("exponent").get<double>();
  c.rho = j.at("rho").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.coeff_path = j.at("coeff_path").get<std::string>();
  c.phases = j.at("phases").get<std::string>();
  c.n = j.at("n").get<std::size_t>();
  c.n_list = j.at("n_list").get<std::vector<std::size_t>>();
  c.beta_arg = j.at("beta_arg").get<double>();
  c.beta_step = j.at("beta_step").get<double>();
  c.tol_theta = j.at("tol_theta").get<double>();
  c.format = j.at("format").get<std::string>();
  c.out = j.at("out").get<std::string>();
  c.weak_type = j.at("weak_type").get<bool>();
  c.histogram_bins = j.at("histogram_bins").get<int>();
  c.hist_out = j.at("hist_out").get<std::string>();
  c.phi = j.at("phi").get<double>();
  c.delta = j.at("delta").get<double>();
  c.grid = j.at("grid").get<int>();
  c.random_intervals = j.at("random_intervals").get<int>();
  c.interval_seed = j.at("interval_seed").get<std::uint64_t>();
  if (!j.at("window_a").is_null()) c.window_a = j.at("window_a").get<double>();
  if (!j.at("window_b").is_null()) c.window_b = j.at("window_b").get<double>();
  if (!j.at("p").is_null()) c.p = j.at("p").get<double>();
  if (!j.at("r_override").is_null()) c.r_override = j.at("r_override").get<double>();
  return c;
}

// ---- argv front end ---------------------------------------------------------

namespace {

void add_model_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model, "zero|constant|power|log|iid|file")
      ->check(CLI::IsMember({"zero", "constant", "power", "log", "iid", "file"}));
  sub->add_option("--alpha-re", c.alpha_re, "constant model: Re(alpha)");
  sub->add_option("--alpha-im", c.alpha_im, "constant model: Im(alpha)");
  sub->add_option("--A", c.amplitude, "power/log model amplitude");
  sub->add_option("--q", c.exponent, "power model exponent in (0, 1]");
  sub->add_option("--rho", c.rho, "iid model disk radius in (0, 1)");
  sub->add_option("--seed", c.seed, "seed for random models");
  sub->add_option("--path", c.coeff_path, "file model: coefficient file path");
  sub->add_option("--phases", c.phases, "positive|alternating|random")
      ->check(CLI::IsMember({"positive", "alternating", "random"}));
}

void add_shared_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--beta-arg", c.beta_arg, "arg(beta) in radians (beta = e^{i arg})");
  sub->add_option("--tol-theta", c.tol_theta, "zero bisection tolerance");
  sub->add_option("--format", c.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output path (default: stdout)");
}

}  // namespace

int main_with_args(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  if (const char* env = std::getenv("POPUC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap <= 0) {
      err << "error: POPUC_THREADS must be a positive integer\n";
      return 1;
    }
    set_thread_cap(static_cast<int>(cap));
  }

  RunConfig c;
  CLI::App app{"paraorthogonal polynomial zero toolkit"};
  app.require_subcommand(1);

  CLI::App* zeros = app.add_subcommand("zeros", "locate all unit-circle zeros");
  add_model_options(zeros, c);
  add_shared_options(zeros, c);
  zeros->add_option("--n", c.n, "degree index (n+1 zeros)")->required();
  double win_a = 0.0, win_b = 0.0;
  CLI::Option* opt_a =
      zeros->add_option("--a", win_a, "window mode: count zeros in [a, b)");
  CLI::Option* opt_b = zeros->add_option("--b", win_b, "window mode: end of window");

  CLI::App* spacing = app.add_subcommand("spacing", "gap statistics of the zero set");
  add_model_options(spacing, c);
  add_shared_options(spacing, c);
  spacing->add_option("--n", c.n, "degree index")->required();
  double p_val = 0.0;
  CLI::Option* opt_p =
      spacing->add_option("--p", p_val, "attach the n^{1/p}-scaled max gap");
  spacing->add_flag("--weak-type", c.weak_type,
                    "attach (n/f(n)) * max_gap from the decreasing rearrangement");
  spacing->add_option("--emit-histogram", c.histogram_bins,
                      "write a k-bin gap histogram CSV");
  spacing->add_option("--hist-out", c.hist_out, "histogram output path");

  CLI::App* measure = app.add_subcommand("measure", "interval weight of the zero measure");
  add_model_options(measure, c);
  add_shared_options(measure, c);
  measure->add_option("--n", c.n, "number of atoms (zeros of the degree-n polynomial)")
      ->required();
  measure->add_option("--phi", c.phi, "interval start angle")->required();
  measure->add_option("--delta", c.delta, "interval length in (0, 2*pi]")->required();
  double r_val = 0.0;
  CLI::Option* opt_r = measure->add_option(
      "--r", r_val, "band radius (default: Cesaro mean of the moduli)");

  CLI::App* sweep = app.add_subcommand("sweep", "scaled max-gap trend over degrees");
  add_model_options(sweep, c);
  add_shared_options(sweep, c);
  sweep->add_option("--n-list", c.n_list, "increasing degree list")
      ->required()
      ->delimiter(',');
  CLI::Option* opt_ps = sweep->add_option("--p", p_val, "scaling exponent (default 2)");
  sweep->add_option("--beta-step", c.beta_step, "per-degree rotation of arg(beta)");

  CLI::App* mhaskar =
      app.add_subcommand("mhaskar-saff", "distribution band check over an interval grid");
  add_model_options(mhaskar, c);
  add_shared_options(mhaskar, c);
  mhaskar->add_option("--n", c.n, "number of atoms")->required();
  mhaskar->add_option("--grid", c.grid, "deterministic interval grid size");
  mhaskar->add_option("--random-intervals", c.random_intervals,
                      "number of random intervals");
  mhaskar->add_option("--interval-seed", c.interval_seed, "seed for random intervals");

  CLI::App* oracle =
      app.add_subcommand("oracle-check", "cross-check zeros against the root-finder oracle");
  add_model_options(oracle, c);
  add_shared_options(oracle, c);
  oracle->add_option("--n", c.n, "degree index (n <= 50)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return 1;
  }

  for (CLI::App* sub : {zeros, spacing, measure, sweep, mhaskar, oracle})
    if (sub->parsed()) c.subcommand = sub->get_name();
  if (opt_a->count() > 0) c.window_a = win_a;
  if (opt_b->count() > 0) c.window_b = win_b;
  if (opt_p->count() > 0 || opt_ps->count() > 0) c.p = p_val;
  if (opt_r->count() > 0) c.r_override = r_val;

  try {
    run(c, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

const std::map<std::string, std::string>& operation_coverage() {
  static const std::map<std::string, std::string> table{
      {"coefficient", "zeros"},
      {"decreasing_rearrangement", "spacing"},
      {"cesaro_mean", "measure"},
      {"lp_norm", "sweep"},
      {"blaschke_trace", "oracle-check"},
      {"poly_pair", "zeros"},
      {"popuc_value", "zeros"},
      {"phase", "zeros"},
      {"phase_increment", "zeros"},
      {"find_zeros", "zeros"},
      {"oracle_zeros", "oracle-check"},
      {"count_zeros_in", "zeros"},
      {"spacing_report", "spacing"},
      {"gap_scaling_sweep", "sweep"},
      {"weak_type_check", "spacing"},
      {"interval_weight", "measure"},
      {"mhaskar_saff_check", "mhaskar-saff"},
  };
  return table;
}

}  // namespace popuc::cli
