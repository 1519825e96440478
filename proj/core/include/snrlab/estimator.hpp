#pragma once

#include <functional>
#include <limits>
#include <span>

#include "snrlab/errors.hpp"
#include "snrlab/sensor.hpp"

namespace snrlab {

// A monotone increasing exposure-to-mean response mu(theta). Inverting it at
// an observed frame average gives the mean-invariant estimate: the exposure
// whose predicted mean reproduces the observation exactly.
struct MeanFunction {
  std::function<double(double)> eval;
  double theta_floor = 1e-9;  // lower bracket edge for inversion
  double theta_cap = 1e9;     // doubling cap; exceeding it means saturation
  // Supremum of the response range, never attained at finite exposure
  // (1 for one-bit, L for a clipped pixel). Observations at or above it have
  // no finite preimage even when mu rounds to the ceiling in double.
  double y_sup = std::numeric_limits<double>::infinity();
};

MeanFunction identity_mean_function();                      // mu(theta) = theta
MeanFunction one_bit_mean_function();                       // mu = 1 - e^{-theta}
MeanFunction truncated_poisson_mean_function(long full_well);

// Bracketing bisection on mu(theta) = y_bar, terminating when |mu - y_bar|
// <= tol. Throws SaturationError when y_bar lies at or outside the response
// range, ConvergenceError if the solve stalls.
double invert_mean(const MeanFunction& mean, double y_bar, double tol = 1e-10);

// Maximum-likelihood exposure for a Bernoulli (one-bit) frame average,
// -log(1 - y_bar); y_bar must lie strictly inside (0, 1).
double ml_bernoulli(double y_bar);

// Maximum-likelihood exposure for clipped-Poisson samples, solving the
// score equation that weighs unsaturated counts against the saturated tail
// mass. Requires at least one unsaturated sample.
double ml_truncated_poisson(std::span<const Sample> samples, std::uint32_t full_well);

}  // namespace snrlab
