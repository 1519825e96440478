#pragma once

#include <cstddef>
#include <vector>

#include "snrlab/curve.hpp"
#include "snrlab/estimator.hpp"
#include "snrlab/sensor.hpp"

namespace snrlab {

struct MomentEstimate {
  double mean_hat;
  double var_hat;   // population form, divisor M
  double dmu_hat;   // forward difference to the next grid point; backward at the last
  std::size_t m_samples;
};

// Simulates m_samples draws of the model at every grid exposure and reduces
// them to moment estimates. Work is sharded deterministically: grid point k,
// sample m draws from stream (base.stream_id() + k) * 2^32 + m of base.seed(),
// so results are bit-for-bit identical for any thread count (SNRLAB_THREADS
// caps parallelism) and common across parameter sweeps that share a seed.
std::vector<MomentEstimate> estimate_moments(const ForwardModel& model,
                                             const ExposureGrid& grid,
                                             std::size_t m_samples,
                                             const SeededRng& base);

// sqrt(N) * theta / sd_hat * dmu_hat per grid point. Points with zero sample
// variance are emitted as NaN so plots show gaps rather than artifacts.
SnrCurve snr_exp_mc(const std::vector<MomentEstimate>& estimates,
                    const ExposureGrid& grid, unsigned n_frames);

struct EmpiricalSnr {
  double snr;                     // theta / rmse over non-saturated trials
  std::size_t saturated_trials;   // trials whose estimator hit a range edge
  std::size_t trials;
  bool reliable;                  // false once > 1% of trials saturate
};

// Direct definition-level SNR: repeat "average n_frames draws, invert the
// mean function" over many trials and form theta / sqrt(MSE). Infinite for
// a deterministic model (zero MSE). Requires trials >= 100.
EmpiricalSnr empirical_definition_snr(const ForwardModel& model, double theta,
                                      std::size_t n_frames, std::size_t trials,
                                      const MeanFunction& mean, SeededRng& rng);

}  // namespace snrlab
