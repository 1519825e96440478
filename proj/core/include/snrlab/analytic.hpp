#pragma once

#include <utility>

#include "snrlab/curve.hpp"
#include "snrlab/sensor.hpp"

namespace snrlab {

struct Moments {
  double mean;
  double variance;
  double mean_derivative;  // d mean / d theta
};

// Closed-form mean, variance and mean-derivative of Y = min(Poisson(theta), L)
// in terms of the incomplete-gamma tails; L >= 1, theta > 0.
Moments truncated_poisson_moments(double theta, long full_well);

// Exposure-referred SNR of the clipped Poisson response over n_frames
// averaged frames: sqrt(N) * theta / sd(Y) * dmu/dtheta. Returns 0 in the
// deep-saturation limit where variance and slope both underflow.
double snr_exp_truncated_poisson(double theta, long full_well, unsigned n_frames);

// Output-referred SNR of the linear (pre-saturation) response with shot,
// dark and read noise: theta / sqrt(theta + dark + read^2) below full well,
// 0 at and beyond it.
double snr_out(double theta, const SensorConfig& cfg);

// One-bit sensor with integer threshold q >= 1, zero read noise.
double snr_exp_one_bit(double theta, long threshold, unsigned n_frames);

// Output-referred one-bit SNR sqrt(N * P(Y=1) / P(Y=0)); +infinity once
// P(Y=0) underflows (the output-referred figure grows without bound).
double snr_out_one_bit(double theta, long threshold, unsigned n_frames);

// Returns {exposure-referred SNR, output-referred SNR * (theta/mu) * dmu/dtheta}
// for the clipped Poisson response; the two sides agree identically.
std::pair<double, double> snr_relation_check(double theta, long full_well);

// Large-full-well limiting envelope on log axes: for phi = log10(theta),
// 20*log10(SNR_exp) -> 10*phi up to phi = log10(L) and -infinity beyond.
// Requires full_well >= 100.
double snr_exp_limiting_db(double phi, long full_well);

}  // namespace snrlab
