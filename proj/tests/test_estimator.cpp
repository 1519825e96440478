#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "snrlab/analytic.hpp"
#include "snrlab/errors.hpp"
#include "snrlab/estimator.hpp"
#include "snrlab/sensor.hpp"

using snrlab::MeanFunction;
using snrlab::Sample;
using snrlab::SaturationError;
using snrlab::SeededRng;

TEST_CASE("mean functions evaluate their closed forms") {
  const auto ident = snrlab::identity_mean_function();
  CHECK(ident.eval(3.7) == 3.7);

  const auto bit = snrlab::one_bit_mean_function();
  CHECK(bit.eval(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));

  const auto trunc = snrlab::truncated_poisson_mean_function(10);
  CHECK(trunc.eval(4.0) ==
        doctest::Approx(snrlab::truncated_poisson_moments(4.0, 10).mean).epsilon(1e-14));
}

TEST_CASE("mean inversion round trip across the interior of each range") {
  const auto cases = std::vector<std::pair<MeanFunction, std::vector<double>>>{
      {snrlab::identity_mean_function(), {1e-6, 0.5, 3.0, 1e4}},
      {snrlab::one_bit_mean_function(), {1e-6, 0.1, 0.5, 0.9, 0.999}},
      {snrlab::truncated_poisson_mean_function(10), {0.01, 1.0, 5.0, 9.0, 9.99}},
  };
  for (const auto& [mean, ys] : cases) {
    for (double y : ys) {
      const double theta = snrlab::invert_mean(mean, y);
      INFO("y=", y);
      CHECK(std::fabs(mean.eval(theta) - y) <= 1e-10);
    }
  }
}

TEST_CASE("mean inversion rejects range edges as saturation") {
  const auto bit = snrlab::one_bit_mean_function();
  CHECK_THROWS_AS((void)snrlab::invert_mean(bit, 1.0), SaturationError);
  CHECK_THROWS_AS((void)snrlab::invert_mean(bit, 1.5), SaturationError);
  CHECK_THROWS_AS((void)snrlab::invert_mean(bit, 0.0), SaturationError);
  CHECK_THROWS_AS((void)snrlab::invert_mean(bit, -0.1), SaturationError);

  const auto trunc = snrlab::truncated_poisson_mean_function(7);
  CHECK_THROWS_AS((void)snrlab::invert_mean(trunc, 7.0), SaturationError);
  CHECK_THROWS_AS((void)snrlab::invert_mean(trunc, 0.0), SaturationError);

  // the error reports which bound was hit
  try {
    (void)snrlab::invert_mean(trunc, 7.0);
  } catch (const SaturationError& e) {
    CHECK(e.bound() == doctest::Approx(7.0));
  }
}

TEST_CASE("bernoulli maximum likelihood") {
  for (double y : {0.01, 0.25, 0.5, 0.86, 0.999})
    CHECK(snrlab::ml_bernoulli(y) == doctest::Approx(-std::log(1.0 - y)).epsilon(1e-14));
  CHECK_THROWS_AS((void)snrlab::ml_bernoulli(0.0), SaturationError);
  CHECK_THROWS_AS((void)snrlab::ml_bernoulli(1.0), SaturationError);

  // ML equals mean inversion for the one-bit sensor (exponential family)
  const auto bit = snrlab::one_bit_mean_function();
  for (double y : {0.05, 0.3, 0.7, 0.95})
    CHECK(std::fabs(snrlab::ml_bernoulli(y) - snrlab::invert_mean(bit, y)) < 1e-9);
}

TEST_CASE("pure-Poisson ML equals the sample mean (identity inversion)") {
  // The solver promises |mu(theta_hat) - y| <= tol (absolute), which for the
  // identity mean bounds theta_hat itself.
  const auto ident = snrlab::identity_mean_function();
  for (double y : {0.2, 1.7, 42.0})
    CHECK(std::fabs(snrlab::invert_mean(ident, y) - y) <= 1e-10);
}

TEST_CASE("truncated-Poisson ML: unsaturated samples reduce to the mean") {
  const std::vector<Sample> samples = {0, 1, 3, 2, 1, 0, 4, 2};
  double mean = 0;
  for (Sample s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  CHECK(snrlab::ml_truncated_poisson(samples, 7) == doctest::Approx(mean).epsilon(1e-10));
}

TEST_CASE("truncated-Poisson ML: all-saturated input raises saturation") {
  const std::vector<Sample> samples = {7, 7, 7, 7};
  CHECK_THROWS_AS((void)snrlab::ml_truncated_poisson(samples, 7), SaturationError);
}

TEST_CASE("truncated-Poisson ML solves its score equation") {
  // mixed saturation: verify the returned root satisfies the score equation
  const std::vector<Sample> samples = {3, 7, 5, 7, 2, 6, 7, 4, 1, 7};
  const std::uint32_t L = 7;
  const double theta = snrlab::ml_truncated_poisson(samples, L);

  double sum_unsat = 0, n_unsat = 0;
  for (Sample s : samples)
    if (s < L) {
      sum_unsat += s;
      n_unsat += 1;
    }
  const double n = static_cast<double>(samples.size());
  const long double psi = oracle::psi_brute(L, theta);
  const long double psi_prime =
      -oracle::poisson_pmf_table(static_cast<long double>(theta), L)[L - 1];
  const long double score = (sum_unsat / n) / theta - n_unsat / n +
                            (1.0L - n_unsat / n) * (-psi_prime) / (1.0L - psi);
  CHECK(std::fabs(static_cast<double>(score)) < 1e-7);
}

TEST_CASE("ML differs from mean inversion on small truncated samples") {
  // Example-5 regime: with mixed saturation at tiny N the two estimators
  // disagree. Exhaustively search N = 4 samples over L = 3 for a witness.
  const std::uint32_t L = 3;
  const auto mean_fn = snrlab::truncated_poisson_mean_function(L);
  double max_gap = 0.0;
  for (Sample a = 0; a <= L; ++a)
    for (Sample b = a; b <= L; ++b)
      for (Sample c = b; c <= L; ++c)
        for (Sample d = c; d <= L; ++d) {
          const std::vector<Sample> s = {a, b, c, d};
          const double ybar = (a + b + c + d) / 4.0;
          if (ybar <= 0.0 || ybar >= static_cast<double>(L)) continue;
          const bool mixed = d == L && a < L;
          if (!mixed) continue;
          const double mi = snrlab::invert_mean(mean_fn, ybar);
          const double ml = snrlab::ml_truncated_poisson(s, L);
          max_gap = std::max(max_gap, std::fabs(mi - ml));
        }
  CHECK(max_gap > 1e-3);
}

TEST_CASE("ML and mean inversion agree asymptotically") {
  // N = 1e5 draws at theta = 4, L = 7
  SeededRng rng(31, 0);
  const std::uint32_t L = 7;
  std::vector<Sample> samples(100000);
  double sum = 0;
  for (auto& s : samples) {
    s = snrlab::draw_truncated_poisson(4.0, L, rng);
    sum += s;
  }
  const double ybar = sum / static_cast<double>(samples.size());
  const double mi = snrlab::invert_mean(snrlab::truncated_poisson_mean_function(L), ybar);
  const double ml = snrlab::ml_truncated_poisson(samples, L);
  CHECK(std::fabs(mi - ml) <= 0.02);
}

TEST_CASE("both estimators are consistent") {
  // |theta_hat - theta| <= 3 asymptotic standard deviations in >= 18/20 seeds
  const std::uint32_t L = 7;
  const double theta = 4.0;
  const std::size_t n = 100000;
  const auto m = snrlab::truncated_poisson_moments(theta, L);
  // delta-method standard deviation of the mean-inverted estimate
  const double sd = std::sqrt(m.variance / static_cast<double>(n)) / m.mean_derivative;

  int mi_pass = 0, ml_pass = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed, 5);
    std::vector<Sample> samples(n);
    double sum = 0;
    for (auto& s : samples) {
      s = snrlab::draw_truncated_poisson(theta, L, rng);
      sum += s;
    }
    const double ybar = sum / static_cast<double>(n);
    const double mi =
        snrlab::invert_mean(snrlab::truncated_poisson_mean_function(L), ybar);
    const double ml = snrlab::ml_truncated_poisson(samples, L);
    if (std::fabs(mi - theta) <= 3.0 * sd) ++mi_pass;
    if (std::fabs(ml - theta) <= 3.0 * sd) ++ml_pass;
  }
  CHECK(mi_pass >= 18);
  CHECK(ml_pass >= 18);
}
