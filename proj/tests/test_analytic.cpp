#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "snrlab/analytic.hpp"
#include "snrlab/special.hpp"

namespace {

double rel_err(double got, long double want) {
  if (want == 0.0L) return std::fabs(got);
  const long double num = got >= want ? got - want : want - static_cast<long double>(got);
  return static_cast<double>(num / (want < 0.0L ? -want : want));
}

}  // namespace

TEST_CASE("closed-form moments match brute-force pmf sums") {
  for (long L : {1L, 2L, 5L, 10L, 100L}) {
    for (double theta : oracle::log_grid(1e-2, 10.0 * static_cast<double>(L), 50)) {
      const auto want = oracle::truncated_moments_brute(L, theta);
      const auto got = snrlab::truncated_poisson_moments(theta, L);
      INFO("L=", L, " theta=", theta);
      CHECK(rel_err(got.mean, want.mean) < 1e-9);
      if (want.variance > 1e-280L)
        CHECK(rel_err(got.variance, want.variance) < 1e-9);
      else
        CHECK(got.variance <= 1e-270);
      if (want.dmu > 1e-280L)
        CHECK(rel_err(got.mean_derivative, want.dmu) < 1e-9);
      else
        CHECK(got.mean_derivative <= 1e-270);
      CHECK(got.variance >= 0.0);
      CHECK(got.mean >= 0.0);
      CHECK(got.mean <= static_cast<double>(L));
      CHECK(got.mean_derivative >= 0.0);
    }
  }
}

TEST_CASE("moment edge cases: Poisson limit and Bernoulli collapse") {
  // untruncated limit
  for (double theta : {1.0, 10.0}) {
    const auto m = snrlab::truncated_poisson_moments(theta, 10000);
    CHECK(rel_err(m.mean, static_cast<long double>(theta)) < 1e-8);
    CHECK(rel_err(m.variance, static_cast<long double>(theta)) < 1e-8);
    CHECK(rel_err(m.mean_derivative, 1.0L) < 1e-8);
  }
  // L = 1 is the noiseless one-bit sensor
  for (double theta : {0.3, 1.0, 2.5}) {
    const auto m = snrlab::truncated_poisson_moments(theta, 1);
    CHECK(rel_err(m.mean, 1.0L - std::exp(-static_cast<long double>(theta))) < 1e-12);
  }
  // explicit spec point L = 10, theta = 7
  const auto w = oracle::truncated_moments_brute(10, 7.0L);
  const auto g = snrlab::truncated_poisson_moments(7.0, 10);
  CHECK(rel_err(g.mean, w.mean) < 1e-11);
  CHECK(rel_err(g.variance, w.variance) < 1e-11);
  CHECK(rel_err(g.mean_derivative, w.dmu) < 1e-11);
}

TEST_CASE("mean derivative equals the lower tail and finite differences") {
  for (long L : {1L, 2L, 10L, 100L}) {
    for (double theta : oracle::log_grid(1e-2, 3.0 * static_cast<double>(L), 30)) {
      const auto m = snrlab::truncated_poisson_moments(theta, L);
      CHECK(rel_err(m.mean_derivative, oracle::psi_brute(L, theta)) < 1e-10);
      const double h = 1e-6 * std::max(1.0, theta);
      const double fd = (snrlab::truncated_poisson_moments(theta + h, L).mean -
                         snrlab::truncated_poisson_moments(theta - h, L).mean) /
                        (2.0 * h);
      CHECK(std::fabs(m.mean_derivative - fd) < 1e-6);
    }
  }
}

TEST_CASE("exposure-referred SNR: limits, shape, and frame scaling") {
  // Poisson limit sqrt(theta)
  CHECK(rel_err(snrlab::snr_exp_truncated_poisson(25.0, 10000, 1), 5.0L) < 1e-6);

  // unimodal over the grid, rising then collapsing past L
  for (long L : {10L, 100L}) {
    const auto grid = oracle::log_grid(1e-2, 10.0 * static_cast<double>(L), 120);
    std::vector<double> snr(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      snr[i] = snrlab::snr_exp_truncated_poisson(grid[i], L, 1);
    int direction_changes = 0;
    for (std::size_t i = 2; i < grid.size(); ++i) {
      const bool rising_prev = snr[i - 1] > snr[i - 2];
      const bool rising_cur = snr[i] > snr[i - 1];
      if (rising_prev != rising_cur && snr[i] > 1e-12) ++direction_changes;
    }
    INFO("L=", L);
    CHECK(direction_changes <= 1);  // single interior maximum
    // collapses after the full well; the drop steepens with L (true ratios:
    // 1.9e-2 at L=10, 7.2e-20 at L=100)
    const double collapse_ratio = L >= 100 ? 0.01 : 0.05;
    CHECK(snrlab::snr_exp_truncated_poisson(3.0 * static_cast<double>(L), L, 1) <
          collapse_ratio * *std::max_element(snr.begin(), snr.end()));
  }

  // deep saturation evaluates via the limit, not 0/0
  const double deep = snrlab::snr_exp_truncated_poisson(1e6, 10, 1);
  CHECK(deep == 0.0);

  // N enters exactly as sqrt(N)
  for (double theta : {0.5, 5.0, 9.0}) {
    const double one = snrlab::snr_exp_truncated_poisson(theta, 10, 1);
    const double four = snrlab::snr_exp_truncated_poisson(theta, 10, 4);
    CHECK(four == 2.0 * one);
  }
}

TEST_CASE("output-referred SNR of the linear model") {
  snrlab::SensorConfig cfg;
  cfg.full_well = 100;
  cfg.adc_bits = 7;
  CHECK(snrlab::snr_out(16.0, cfg) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(snrlab::snr_out(100.0, cfg) == 0.0);
  CHECK(snrlab::snr_out(250.0, cfg) == 0.0);

  cfg.read_noise = 2.0;
  CHECK(snrlab::snr_out(5.0, cfg) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));

  cfg.read_noise = 0.0;
  cfg.dark_current = 3.0;
  CHECK(snrlab::snr_out(6.0, cfg) == doctest::Approx(6.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("one-bit SNR closed forms") {
  // q = 1 closed form
  for (double theta : {0.1, 0.7, 2.0}) {
    const long double t = theta;
    const long double want =
        t * std::sqrt(std::exp(-t) / (1.0L - std::exp(-t)));
    CHECK(rel_err(snrlab::snr_exp_one_bit(theta, 1, 1), want) < 1e-12);
  }
  // small-theta asymptote sqrt(theta)
  CHECK(snrlab::snr_exp_one_bit(1e-6, 1, 1) / std::sqrt(1e-6) ==
        doctest::Approx(1.0).epsilon(1e-5));

  // q = 3 against the summation oracle
  {
    const long double t = 2.0L;
    const long double p1 = oracle::poisson_tail_brute(3, t);
    const long double dp = oracle::poisson_pmf_table(t, 3)[2];  // pmf(q-1)
    const long double want = t * dp / std::sqrt(p1 * (1.0L - p1));
    CHECK(rel_err(snrlab::snr_exp_one_bit(2.0, 3, 1), want) < 1e-11);
  }

  // agreement with the L = 1 truncated-Poisson formula
  for (double theta : {0.2, 1.0, 4.0})
    CHECK(rel_err(snrlab::snr_exp_one_bit(theta, 1, 1),
                  static_cast<long double>(
                      snrlab::snr_exp_truncated_poisson(theta, 1, 1))) < 1e-12);

  // sqrt(N) scaling
  CHECK(snrlab::snr_exp_one_bit(1.0, 1, 1000) ==
        doctest::Approx(std::sqrt(1000.0) * snrlab::snr_exp_one_bit(1.0, 1, 1))
            .epsilon(1e-14));
}

TEST_CASE("output-referred one-bit SNR grows without bound") {
  // q = 1, theta = ln 2: half ones -> SNR = sqrt(N)
  CHECK(snrlab::snr_out_one_bit(std::log(2.0), 1, 1) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(snrlab::snr_out_one_bit(std::log(2.0), 1, 9) ==
        doctest::Approx(3.0).epsilon(1e-12));

  // q = 2, theta = 1 via the oracle
  const long double p1 = oracle::poisson_tail_brute(2, 1.0L);
  CHECK(rel_err(snrlab::snr_out_one_bit(1.0, 2, 1),
                std::sqrt(p1 / (1.0L - p1))) < 1e-11);

  // strictly increasing in theta, diverging once P(Y=0) underflows
  double prev = 0.0;
  for (double theta : oracle::log_grid(0.1, 100.0, 30)) {
    const double cur = snrlab::snr_out_one_bit(theta, 1, 1);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(std::isinf(snrlab::snr_out_one_bit(1e4, 1, 1)));
}

TEST_CASE("exposure/output relation identity") {
  for (long L : {7L, 100L, 10000L}) {
    for (double theta : oracle::log_grid(1e-2, 1.2 * static_cast<double>(L), 25)) {
      const auto [lhs, rhs] = snrlab::snr_relation_check(theta, L);
      INFO("L=", L, " theta=", theta);
      if (lhs > 1e-280) CHECK(rel_err(lhs, static_cast<long double>(rhs)) < 1e-10);
    }
  }
  // specific points called out by the contract
  {
    const auto [lhs, rhs] = snrlab::snr_relation_check(20.0, 7);
    CHECK(rel_err(lhs, static_cast<long double>(rhs)) < 1e-10);
    const auto m = oracle::truncated_moments_brute(7, 20.0L);
    const long double direct = 20.0L * m.dmu / std::sqrt(m.variance);
    CHECK(rel_err(lhs, direct) < 1e-9);
  }
  {
    const auto [lhs, rhs] = snrlab::snr_relation_check(10.0, 10000);
    CHECK(rel_err(lhs, std::sqrt(10.0L)) < 1e-7);
    CHECK(rel_err(rhs, std::sqrt(10.0L)) < 1e-7);
  }
}

TEST_CASE("large-full-well limiting envelope in dB") {
  CHECK(snrlab::snr_exp_limiting_db(2.0, 10000) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(std::isinf(snrlab::snr_exp_limiting_db(std::log10(10000.0) + 0.1, 10000)));
  CHECK(snrlab::snr_exp_limiting_db(std::log10(10000.0) + 0.1, 10000) < 0);

  // exact curve vs the envelope at phi = 2
  const double exact_db = 20.0 * std::log10(snrlab::snr_exp_truncated_poisson(100.0, 10000, 1));
  CHECK(std::fabs(exact_db - 20.0) < 0.05);

  // envelope accuracy over phi in [0, 0.9 log10 L]
  for (double phi = 0.0; phi <= 0.9 * std::log10(10000.0); phi += 0.1) {
    const double exact =
        20.0 * std::log10(snrlab::snr_exp_truncated_poisson(std::pow(10.0, phi), 10000, 1));
    INFO("phi=", phi);
    CHECK(std::fabs(exact - 10.0 * phi) < 0.1);
  }
}
