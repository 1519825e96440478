#include "snrlab/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "snrlab/special.hpp"

namespace snrlab {
namespace {

// Poisson weight theta^k e^{-theta} / k! in extended precision; anchors the
// moment summations below at their largest term.
long double pmf_ld(long k, double theta) {
  return expl((long double)log_poisson_pmf(k, theta));
}

}  // namespace

Moments truncated_poisson_moments(double theta, long full_well) {
  if (full_well < 1)
    throw std::invalid_argument("truncated_poisson_moments: full_well must be >= 1");
  if (!(theta >= 0.0)) throw std::domain_error("truncated_poisson_moments: theta must be >= 0");

  const long L = full_well;
  if (theta == 0.0) return {0.0, 0.0, 1.0};

  const long double Ld = (long double)L;
  const long double td = (long double)theta;

  // d mean / d theta collapses analytically to the head mass P(X <= L-1):
  //   theta Psi'_{L-1} + Psi_{L-1} - L Psi'_L = Psi_L.
  const double dmu = psi(L, theta);

  long double mean, var;
  if (theta > (double)L) {
    // Saturated regime: work with the deficiency D = L - Y, summing downward
    // from its largest weight at k = L - 1. Every term is nonnegative and
    // E[D]^2 << E[D^2] once clipping dominates, so nothing cancels.
    long double p = pmf_ld(L - 1, theta);
    long double e1 = 0.0L, e2 = 0.0L;
    for (long k = L - 1; k >= 0 && p > 0.0L; --k) {
      const long double d = Ld - (long double)k;
      e1 += d * p;
      e2 += d * d * p;
      if (d * d * p < e2 * 1e-24L) break;
      p *= (long double)k / td;
    }
    mean = Ld - e1;
    var = e2 - e1 * e1;
  } else {
    // Unsaturated regime: work with the overflow O = (X - L)^+, summing the
    // decaying tail upward from k = L + 1. Substituting Y = X - O gives
    //   Var[Y] = theta - E[O^2] - E[O]^2 - 2 (L - theta) E[O],
    // where every O-moment is a small correction to theta.
    long double p = pmf_ld(L + 1, theta);
    long double e1 = 0.0L, e2 = 0.0L;
    const long double far_edge = td + 60.0L * sqrtl(td + 1.0L) + 60.0L;
    for (long k = L + 1; p > 0.0L; ++k) {
      const long double o = (long double)k - Ld;
      e1 += o * p;
      e2 += o * o * p;
      if ((long double)k > far_edge && o * o * p < e2 * 1e-24L) break;
      p *= td / (long double)(k + 1);
    }
    mean = td - e1;
    var = td - e2 - e1 * e1 - 2.0L * (Ld - td) * e1;
  }
  if (var < 0.0L) var = 0.0L;

  return {(double)mean, (double)var, dmu};
}

double snr_exp_truncated_poisson(double theta, long full_well, unsigned n_frames) {
  if (n_frames < 1)
    throw std::invalid_argument("snr_exp_truncated_poisson: n_frames must be >= 1");
  if (!(theta > 0.0)) throw std::domain_error("snr_exp_truncated_poisson: theta must be > 0");
  const Moments m = truncated_poisson_moments(theta, full_well);
  if (m.variance <= 0.0) return 0.0;
  return std::sqrt((double)n_frames) * theta / std::sqrt(m.variance) * m.mean_derivative;
}

double snr_out(double theta, const SensorConfig& cfg) {
  cfg.validate();
  if (!(theta > 0.0)) throw std::domain_error("snr_out: theta must be > 0");
  if (theta >= (double)cfg.full_well) return 0.0;
  const double noise_var = theta + cfg.dark_current + cfg.read_noise * cfg.read_noise;
  return theta / std::sqrt(noise_var);
}

double snr_exp_one_bit(double theta, long threshold, unsigned n_frames) {
  if (threshold < 1) throw std::invalid_argument("snr_exp_one_bit: threshold must be >= 1");
  if (n_frames < 1) throw std::invalid_argument("snr_exp_one_bit: n_frames must be >= 1");
  if (!(theta > 0.0)) throw std::domain_error("snr_exp_one_bit: theta must be > 0");
  const double p0 = psi(threshold, theta);
  const double p1 = psi_lower(threshold, theta);
  const double var = p0 * p1;
  if (var <= 0.0) return 0.0;
  const double dmu = std::exp(log_poisson_pmf(threshold - 1, theta));
  return std::sqrt((double)n_frames) * theta / std::sqrt(var) * dmu;
}

double snr_out_one_bit(double theta, long threshold, unsigned n_frames) {
  if (threshold < 1) throw std::invalid_argument("snr_out_one_bit: threshold must be >= 1");
  if (n_frames < 1) throw std::invalid_argument("snr_out_one_bit: n_frames must be >= 1");
  if (!(theta >= 0.0)) throw std::domain_error("snr_out_one_bit: theta must be >= 0");
  const double p0 = psi(threshold, theta);
  if (p0 <= 0.0) return std::numeric_limits<double>::infinity();
  const double p1 = psi_lower(threshold, theta);
  return std::sqrt((double)n_frames * p1 / p0);
}

std::pair<double, double> snr_relation_check(double theta, long full_well) {
  const Moments m = truncated_poisson_moments(theta, full_well);
  if (m.variance <= 0.0 || m.mean <= 0.0) return {0.0, 0.0};
  const double sd = std::sqrt(m.variance);
  const double direct = theta / sd * m.mean_derivative;
  const double via_output = (m.mean / sd) * (theta / m.mean) * m.mean_derivative;
  return {direct, via_output};
}

double snr_exp_limiting_db(double phi, long full_well) {
  if (full_well < 100)
    throw std::invalid_argument("snr_exp_limiting_db: full_well must be >= 100");
  if (phi <= std::log10((double)full_well)) return 10.0 * phi;
  return -std::numeric_limits<double>::infinity();
}

}  // namespace snrlab
