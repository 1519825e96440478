#include "snrlab/qis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "snrlab/analytic.hpp"
#include "snrlab/special.hpp"

namespace snrlab {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

void check_one_bit_args(double theta, double threshold, double read_noise, const char* fn) {
  if (!(theta >= 0.0)) throw std::domain_error(std::string(fn) + ": theta must be >= 0");
  if (!(threshold > 0.0)) throw std::domain_error(std::string(fn) + ": threshold must be > 0");
  if (!(read_noise >= 0.0))
    throw std::domain_error(std::string(fn) + ": read_noise must be >= 0");
}

}  // namespace

double one_bit_mean(double theta, double threshold, double read_noise) {
  check_one_bit_args(theta, threshold, read_noise, "one_bit_mean");

  if (read_noise == 0.0) {
    // Gaussian collapses to a point mass: P(Y = 1) = P(X >= ceil(threshold)).
    const long q = (long)std::ceil(threshold);
    return psi_lower(q, theta);
  }

  // P(Y = 1) = sum_k pmf(k; theta) * P(k + noise >= threshold), summed from
  // the Poisson mode outward until the uncovered probability mass is < 1e-14.
  const double inv = 1.0 / (kSqrt2 * read_noise);
  const auto cross = [&](long k) { return 0.5 * std::erfc((threshold - (double)k) * inv); };

  if (theta == 0.0) return cross(0);

  const long k0 = (long)theta;
  const long double t = theta;
  long double mass = 1.0L;   // accumulated pmf relative to the anchor term
  long double value = (long double)cross(k0);
  long double term = 1.0L;
  for (long k = k0; k > 0; --k) {
    term *= (long double)k / t;
    mass += term;
    value += term * (long double)cross(k - 1);
    if (term < mass * 1e-20L) break;
  }
  const long double anchor = expl((long double)log_poisson_pmf(k0, theta));
  term = 1.0L;
  for (long k = k0 + 1;; ++k) {
    term *= t / (long double)k;
    mass += term;
    value += term * (long double)cross(k);
    if (anchor * mass >= 1.0L - 1e-14L) break;   // residual tail mass < 1e-14
    if (term < mass * 1e-20L) break;
    if (k > k0 + 100000) break;
  }
  const double out = (double)(anchor * value);
  return std::clamp(out, 0.0, 1.0);
}

double one_bit_variance(double mean) {
  if (!(mean >= 0.0 && mean <= 1.0))
    throw std::domain_error("one_bit_variance: mean must lie in [0, 1]");
  return mean * (1.0 - mean);
}

double one_bit_snr_exp(double theta, double threshold, double read_noise, unsigned n_frames,
                       double eps) {
  check_one_bit_args(theta, threshold, read_noise, "one_bit_snr_exp");
  if (!(theta > 0.0)) throw std::domain_error("one_bit_snr_exp: theta must be > 0");
  if (n_frames < 1) throw std::invalid_argument("one_bit_snr_exp: n_frames must be >= 1");
  if (eps < 0.0) throw std::invalid_argument("one_bit_snr_exp: eps must be >= 0");

  // Always the numerical pipeline (series mean + forward difference), even at
  // read_noise = 0 where a closed form exists; the closed form lives in
  // snr_exp_one_bit and the two are compared in tests, so this path must not
  // delegate to it.
  const double h = eps > 0.0 ? eps : 1e-4 * std::max(1.0, theta);
  const double mu = one_bit_mean(theta, threshold, read_noise);
  const double var = one_bit_variance(mu);
  if (var <= 0.0) return 0.0;
  const double dmu = (one_bit_mean(theta + h, threshold, read_noise) - mu) / h;
  return std::sqrt((double)n_frames) * theta / std::sqrt(var) * dmu;
}

long optimal_threshold_bound(double theta) {
  if (!(theta > 0.0)) throw std::domain_error("optimal_threshold_bound: theta must be > 0");
  return (long)std::floor(theta) + 1;
}

long optimal_threshold_exact(double theta, long threshold_max) {
  if (!(theta >= 5.0)) throw std::domain_error("optimal_threshold_exact: theta must be >= 5");
  if (threshold_max < 1)
    throw std::invalid_argument("optimal_threshold_exact: threshold_max must be >= 1");
  long best_q = 1;
  double best = -1.0;
  for (long q = 1; q <= threshold_max; ++q) {
    const double s = snr_exp_one_bit(theta, q, 1);
    if (s > best) {
      best = s;
      best_q = q;
    }
  }
  return best_q;
}

double binary_entropy(double theta, long threshold) {
  if (threshold < 1) throw std::invalid_argument("binary_entropy: threshold must be >= 1");
  if (!(theta >= 0.0)) throw std::domain_error("binary_entropy: theta must be >= 0");
  const double p0 = psi(threshold, theta);
  const double p1 = psi_lower(threshold, theta);
  double h = 0.0;
  if (p0 > 0.0) h -= p0 * std::log2(p0);
  if (p1 > 0.0) h -= p1 * std::log2(p1);
  return h;
}

double bit_error_rate(double theta, double threshold, double read_noise) {
  check_one_bit_args(theta, threshold, read_noise, "bit_error_rate");
  const long q = (long)std::ceil(threshold);
  if (q < 1) throw std::domain_error("bit_error_rate: threshold must round up to >= 1");
  const double p0 = psi(q, theta);       // P(X <= q - 1): the "should read 0" mass
  const double p1 = psi_lower(q, theta);  // P(X >= q):     the "should read 1" mass

  double err0;  // P(flip to 1 | count below threshold), evaluated at the boundary count
  double err1;  // P(flip to 0 | count at threshold)
  if (read_noise == 0.0) {
    err0 = 0.0;
    err1 = threshold < 1.0 ? 0.0 : (threshold == 1.0 ? 0.5 : 1.0);
  } else {
    const double inv = 1.0 / (kSqrt2 * read_noise);
    err0 = 0.5 * std::erfc(threshold * inv);
    err1 = 0.5 * std::erfc((1.0 - threshold) * inv);
  }
  return err0 * p0 + err1 * p1;
}

double read_noise_from_ber(double ber) {
  if (!(ber > 0.0 && ber < 0.5))
    throw std::domain_error("read_noise_from_ber: ber must lie in (0, 0.5)");
  // Invert ber = erfc(1 / (2 sqrt(2) sigma)) / 2 at the reference operating
  // point theta = 0, threshold = 1/2.
  const double x = erfc_inv(2.0 * ber);
  return 1.0 / (2.0 * kSqrt2 * x);
}

ThresholdSweep threshold_sweep(double theta, std::span<const double> q_values, double read_noise,
                               unsigned n_frames) {
  if (q_values.empty()) throw std::invalid_argument("threshold_sweep: no threshold values");
  ThresholdSweep sweep;
  sweep.theta = theta;
  sweep.read_noise = read_noise;
  sweep.q_values.assign(q_values.begin(), q_values.end());
  sweep.snr_values.resize(q_values.size());
  for (std::size_t i = 0; i < q_values.size(); ++i)
    sweep.snr_values[i] = one_bit_snr_exp(theta, q_values[i], read_noise, n_frames);
  return sweep;
}

}  // namespace snrlab
