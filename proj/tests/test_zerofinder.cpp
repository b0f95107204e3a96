#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "popuc/opuc.hpp"
#include "popuc/prufer.hpp"
#include "popuc/verblunsky.hpp"
#include "popuc/zerofinder.hpp"

using popuc::VerblunskyModel;
using popuc::ZeroSet;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

// Largest circular distance between two sorted angle sets, allowing a
// cyclic shift (a zero within rounding of the 0/2pi seam may legally land
// at either end).
double circular_set_distance(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  const std::size_t m = a.size();
  double best = 1e300;
  for (std::size_t shift : {std::size_t{0}, std::size_t{1}, m - 1}) {
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double d = std::abs(a[j] - b[(j + shift) % m]);
      d = std::min(d, kTwoPi - d);
      worst = std::max(worst, d);
    }
    best = std::min(best, worst);
  }
  return best;
}

void check_zeroset_contract(const ZeroSet& zeros, const VerblunskyModel& model,
                            std::size_t n, double tol_theta) {
  REQUIRE(zeros.thetas.size() == n + 1);
  REQUIRE(zeros.residuals.size() == n + 1);
  double log_scale = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    log_scale += std::log1p(std::abs(model.coefficient(j)));
  for (std::size_t j = 0; j < zeros.thetas.size(); ++j) {
    CHECK(zeros.thetas[j] >= 0.0);
    CHECK(zeros.thetas[j] < kTwoPi);
    if (j > 0) CHECK(zeros.thetas[j] - zeros.thetas[j - 1] > 2.0 * tol_theta);
    // scale-aware residual bound, evaluated in log space
    CHECK(std::log(zeros.residuals[j] + 1e-300) < std::log(1e-8) + log_scale);
  }
  // Phase criterion at every zero.  1e-9 is attainable whenever the local
  // phase slope is moderate; for strongly random models the slope grows
  // exponentially (Lyapunov behavior) and the phase then jumps by more
  // than 1e-9 between adjacent representable thetas.  The honest floor is
  // the measured one-ulp phase jump at the returned zero.
  const popuc::PhaseEvaluator eval(model, n);
  for (double t : zeros.thetas) {
    const cplx lhs = std::polar(1.0, eval.phase(t));
    const double err = std::abs(lhs - std::conj(zeros.beta));
    const double jump =
        eval.phase(std::nextafter(t, 7.0)) - eval.phase(std::nextafter(t, -1.0));
    CHECK(err < std::max(1e-9, 2.0 * jump));
  }
}

}  // namespace

TEST_CASE("free case: roots of z^{n+1} = conj(beta)") {
  SUBCASE("n+1 = 4, beta = 1") {
    const auto zeros = popuc::find_zeros(VerblunskyModel::zero(), 3, {1.0, 0.0});
    REQUIRE(zeros.thetas.size() == 4);
    const std::vector<double> expected{0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(zeros.thetas[j] - expected[j]) < 1e-12);
    check_zeroset_contract(zeros, VerblunskyModel::zero(), 3, popuc::kDefaultTolTheta);
  }
  SUBCASE("n = 0, beta = i: single zero at arg(conj(beta))") {
    const auto zeros = popuc::find_zeros(VerblunskyModel::zero(), 0, {0.0, 1.0});
    REQUIRE(zeros.thetas.size() == 1);
    CHECK(std::abs(zeros.thetas[0] - 3.0 * kPi / 2.0) < 1e-12);
  }
}

TEST_CASE("quadratic case alpha_0 = 0.5, beta = 1 reduces to z^2 - 1") {
  const auto model = VerblunskyModel::constant({0.5, 0.0});
  const auto zeros = popuc::find_zeros(model, 1, {1.0, 0.0});
  REQUIRE(zeros.thetas.size() == 2);
  CHECK(std::abs(zeros.thetas[0] - 0.0) < 1e-12);
  CHECK(std::abs(zeros.thetas[1] - kPi) < 1e-12);
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(popuc::find_zeros(VerblunskyModel::zero(), 3, {1.0, 0.0}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(popuc::find_zeros(VerblunskyModel::zero(), 3, {1.0, 0.0}, 1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(popuc::find_zeros(VerblunskyModel::zero(), 3, {0.5, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("oracle: free case cube roots of unity") {
  const auto zeros = popuc::oracle_zeros(VerblunskyModel::zero(), 2, {1.0, 0.0});
  REQUIRE(zeros.thetas.size() == 3);
  CHECK(std::abs(zeros.thetas[0] - 0.0) < 1e-10);
  CHECK(std::abs(zeros.thetas[1] - kTwoPi / 3.0) < 1e-10);
  CHECK(std::abs(zeros.thetas[2] - 2.0 * kTwoPi / 3.0) < 1e-10);
}

TEST_CASE("oracle agrees with the quadratic closed form") {
  // z^2 - 1 again, via the coefficient route
  const auto zeros = popuc::oracle_zeros(VerblunskyModel::constant({0.5, 0.0}), 1,
                                         {1.0, 0.0});
  REQUIRE(zeros.thetas.size() == 2);
  CHECK(std::abs(zeros.thetas[0] - 0.0) < 1e-10);
  CHECK(std::abs(zeros.thetas[1] - kPi) < 1e-10);
  CHECK_THROWS_AS(popuc::oracle_zeros(VerblunskyModel::zero(), 51, {1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("finder matches oracle on seeded random models") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto model = VerblunskyModel::iid_uniform_disk(0.8, rng());
    const std::size_t n = 1 + static_cast<std::size_t>(unif(rng) * 29);
    const cplx beta = std::polar(1.0, kTwoPi * unif(rng));
    const auto fast = popuc::find_zeros(model, n, beta);
    const auto slow = popuc::oracle_zeros(model, n, beta);
    CHECK(circular_set_distance(fast.thetas, slow.thetas) < 1e-8);
    check_zeroset_contract(fast, model, n, popuc::kDefaultTolTheta);
  }
}

TEST_CASE("serial reference and parallel kernel agree") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const auto model = VerblunskyModel::iid_uniform_disk(0.7, rng());
    const std::size_t n = 50 + static_cast<std::size_t>(unif(rng) * 250);
    const cplx beta = std::polar(1.0, kTwoPi * unif(rng));
    const auto parallel = popuc::find_zeros(model, n, beta);
    const auto serial = popuc::find_zeros_serial(model, n, beta);
    REQUIRE(parallel.thetas.size() == serial.thetas.size());
    for (std::size_t j = 0; j < parallel.thetas.size(); ++j)
      CHECK(std::abs(parallel.thetas[j] - serial.thetas[j]) <=
            2.0 * popuc::kDefaultTolTheta);
  }
}

TEST_CASE("zero sets for different beta strictly interlace") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = VerblunskyModel::iid_uniform_disk(0.75, rng());
    const std::size_t n = 2 + static_cast<std::size_t>(unif(rng) * 28);
    const double arg1 = kTwoPi * unif(rng);
    const double arg2 = std::fmod(arg1 + 0.5 + 5.0 * unif(rng), kTwoPi);
    const auto za = popuc::find_zeros(model, n, std::polar(1.0, arg1));
    const auto zb = popuc::find_zeros(model, n, std::polar(1.0, arg2));
    // merge with labels; around the circle the labels must alternate
    std::vector<std::pair<double, int>> merged;
    for (double t : za.thetas) merged.emplace_back(t, 0);
    for (double t : zb.thetas) merged.emplace_back(t, 1);
    std::sort(merged.begin(), merged.end());
    for (std::size_t j = 0; j < merged.size(); ++j)
      CHECK(merged[j].second != merged[(j + 1) % merged.size()].second);
  }
}

TEST_CASE("zero counting by phase increments") {
  SUBCASE("full circle and empty interval") {
    const auto model = VerblunskyModel::iid_uniform_disk(0.6, 4);
    CHECK(popuc::count_zeros_in(model, 25, {1.0, 0.0}, 0.0, kTwoPi) == 26);
    CHECK(popuc::count_zeros_in(model, 25, {1.0, 0.0}, 1.0, 1.0) == 0);
    CHECK_THROWS_AS(popuc::count_zeros_in(model, 25, {1.0, 0.0}, 1.0, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(popuc::count_zeros_in(model, 25, {1.0, 0.0}, 0.0, 7.0),
                    std::invalid_argument);
  }
  SUBCASE("matches filtering the located zeros") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto model = VerblunskyModel::iid_uniform_disk(0.7, rng());
      const std::size_t n = 5 + static_cast<std::size_t>(unif(rng) * 80);
      const cplx beta = std::polar(1.0, kTwoPi * unif(rng));
      const double a = kTwoPi * unif(rng) - kPi;
      const double b = a + kTwoPi * unif(rng);
      const long long counted = popuc::count_zeros_in(model, n, beta, a, b);
      const auto zeros = popuc::find_zeros(model, n, beta);
      long long filtered = 0;
      for (double t : zeros.thetas) {
        double shifted = std::fmod(t - a, kTwoPi);
        if (shifted < 0.0) shifted += kTwoPi;
        if (shifted < b - a) ++filtered;
      }
      CHECK(counted == filtered);
    }
  }
  SUBCASE("Geronimus zero-free arc around theta = 0") {
    const auto model = VerblunskyModel::constant({-0.6, 0.0});
    const double half_arc = 2.0 * std::asin(0.6);
    const long long inside = popuc::count_zeros_in(
        model, 80, {-1.0, 0.0}, -half_arc + 1e-3, half_arc - 1e-3);
    CHECK(inside == 0);
  }
}
