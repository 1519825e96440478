#include "snrlab/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "snrlab/parallel.hpp"

namespace snrlab {

std::vector<MomentEstimate> estimate_moments(const ForwardModel& model, const ExposureGrid& grid,
                                             std::size_t m_samples, const SeededRng& base) {
  grid.validate();
  if (!model) throw std::invalid_argument("estimate_moments: empty model");
  if (m_samples < 2) throw std::invalid_argument("estimate_moments: m_samples must be >= 2");
  if (m_samples >= (std::size_t)1 << 32)
    throw std::invalid_argument("estimate_moments: m_samples must fit in 32 bits");

  const std::size_t K = grid.size();
  std::vector<MomentEstimate> out(K);

  // Grid point k, sample m draws from stream (base + k) * 2^32 + m. Every
  // sample owns a fixed substream, so results are bit-identical for any
  // thread count, and sweeps sharing a seed reuse the same randomness per
  // (k, m) slot (common random numbers).
  parallel_for(0, K, [&](std::size_t k) {
    const double theta = grid.thetas[k];
    const std::uint64_t block = (base.stream_id() + (std::uint64_t)k) << 32;
    long double s1 = 0.0L;
    long double s2 = 0.0L;
    double shift = 0.0;
    bool have_shift = false;
    for (std::size_t m = 0; m < m_samples; ++m) {
      SeededRng rng(base.seed(), block + (std::uint64_t)m);
      const double y = model(theta, rng);
      if (!have_shift) {
        shift = y;
        have_shift = true;
      }
      const long double d = (long double)y - (long double)shift;
      s1 += d;
      s2 += d * d;
    }
    const long double m1 = s1 / (long double)m_samples;
    long double var = s2 / (long double)m_samples - m1 * m1;
    if (var < 0.0L) var = 0.0L;
    out[k].mean_hat = (double)((long double)shift + m1);
    out[k].var_hat = (double)var;
    out[k].m_samples = m_samples;
  });

  for (std::size_t k = 0; k < K; ++k) {
    if (K < 2) {
      out[k].dmu_hat = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const std::size_t a = (k + 1 < K) ? k : k - 1;  // backward difference at the last point
    const std::size_t b = a + 1;
    out[k].dmu_hat =
        (out[b].mean_hat - out[a].mean_hat) / (grid.thetas[b] - grid.thetas[a]);
  }
  return out;
}

SnrCurve snr_exp_mc(const std::vector<MomentEstimate>& estimates, const ExposureGrid& grid,
                    unsigned n_frames) {
  if (estimates.size() != grid.size())
    throw std::invalid_argument("snr_exp_mc: estimates and grid sizes differ");
  if (n_frames < 1) throw std::invalid_argument("snr_exp_mc: n_frames must be >= 1");
  SnrCurve curve;
  curve.kind = SnrKind::exposure_referred;
  curve.n_frames = n_frames;
  curve.points.resize(estimates.size());
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    const double theta = grid.thetas[k];
    curve.points[k].theta = theta;
    const auto& e = estimates[k];
    if (!(e.var_hat > 0.0) || std::isnan(e.dmu_hat)) {
      curve.points[k].snr = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    curve.points[k].snr =
        std::sqrt((double)n_frames) * theta / std::sqrt(e.var_hat) * e.dmu_hat;
  }
  return curve;
}

EmpiricalSnr empirical_definition_snr(const ForwardModel& model, double theta,
                                      std::size_t n_frames, std::size_t trials,
                                      const MeanFunction& mean, SeededRng& rng) {
  if (!model) throw std::invalid_argument("empirical_definition_snr: empty model");
  if (!(theta > 0.0)) throw std::domain_error("empirical_definition_snr: theta must be > 0");
  if (n_frames < 1) throw std::invalid_argument("empirical_definition_snr: n_frames must be >= 1");
  if (trials < 100) throw std::invalid_argument("empirical_definition_snr: trials must be >= 100");

  long double sq_err = 0.0L;
  std::size_t used = 0;
  std::size_t saturated = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n_frames; ++i) sum += (long double)model(theta, rng);
    const double y_bar = (double)(sum / (long double)n_frames);
    try {
      const double est = invert_mean(mean, y_bar, 1e-10);
      const long double d = (long double)est - (long double)theta;
      sq_err += d * d;
      ++used;
    } catch (const SaturationError&) {
      ++saturated;
    }
  }

  EmpiricalSnr result;
  result.trials = trials;
  result.saturated_trials = saturated;
  result.reliable = saturated * 100 <= trials;  // flag once more than 1% drop out
  if (used == 0) {
    result.snr = std::numeric_limits<double>::quiet_NaN();
    result.reliable = false;
    return result;
  }
  const double mse = (double)(sq_err / (long double)used);
  result.snr = mse == 0.0 ? std::numeric_limits<double>::infinity() : theta / std::sqrt(mse);
  return result;
}

}  // namespace snrlab
