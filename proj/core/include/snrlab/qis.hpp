#pragma once

#include <span>
#include <vector>

namespace snrlab {

// P(Y = 1) for the one-bit read Y = 1{Poisson(theta) + N(0, sigma^2) >= q}:
// sum_k pmf(k; theta) * erfc((q - k) / (sigma sqrt 2)) / 2, truncated once
// the residual Poisson mass drops below 1e-14. With sigma == 0 this is the
// exact tail P(Poisson >= ceil(q)). Fractional thresholds q > 0 are allowed.
double one_bit_mean(double theta, double threshold, double read_noise);

// Bernoulli variance mu(1-mu); mu must lie in [0, 1].
double one_bit_variance(double mean);

// Exposure-referred SNR of the noisy one-bit read via a forward difference
// of one_bit_mean. eps <= 0 selects the default step 1e-4 * max(1, theta).
double one_bit_snr_exp(double theta, double threshold, double read_noise,
                       unsigned n_frames, double eps = 0.0);

// Threshold maximizing the closed-form lower bound on the one-bit SNR:
// floor(theta) + 1.
long optimal_threshold_bound(double theta);

// Argmax over integer thresholds 1..threshold_max of the exact one-bit SNR;
// requires theta >= 5 (the regime where the search window is meaningful).
long optimal_threshold_exact(double theta, long threshold_max);

// Shannon entropy (bits) of the one-bit output at integer threshold q.
double binary_entropy(double theta, long threshold);

// Probability that read noise flips the comparator decision:
// erfc(q/(sigma sqrt 2))/2 * P(Y=0) + erfc((1-q)/(sigma sqrt 2))/2 * P(Y=1).
// At q = 1/2 this collapses to erfc(1/(sigma sqrt 8))/2, independent of theta.
double bit_error_rate(double theta, double threshold, double read_noise);

// Read-noise level that produces a given q = 1/2 bit error rate; ber must
// lie in (0, 1/2). Inverts erfc numerically.
double read_noise_from_ber(double ber);

struct ThresholdSweep {
  double theta;
  double read_noise;
  std::vector<double> q_values;
  std::vector<double> snr_values;
};

ThresholdSweep threshold_sweep(double theta, std::span<const double> q_values,
                               double read_noise, unsigned n_frames);

}  // namespace snrlab
