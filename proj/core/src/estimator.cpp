#include "snrlab/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "snrlab/analytic.hpp"
#include "snrlab/errors.hpp"
#include "snrlab/special.hpp"

namespace snrlab {

MeanFunction identity_mean_function() {
  MeanFunction f;
  f.eval = [](double theta) { return theta; };
  return f;
}

MeanFunction one_bit_mean_function() {
  MeanFunction f;
  f.eval = [](double theta) { return psi_lower(1, theta); };
  f.y_sup = 1.0;
  return f;
}

MeanFunction truncated_poisson_mean_function(long full_well) {
  if (full_well < 1)
    throw std::invalid_argument("truncated_poisson_mean_function: full_well must be >= 1");
  MeanFunction f;
  f.eval = [full_well](double theta) {
    return truncated_poisson_moments(theta, full_well).mean;
  };
  f.y_sup = (double)full_well;
  return f;
}

double invert_mean(const MeanFunction& mean, double y_bar, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("invert_mean: tol must be > 0");
  if (!mean.eval) throw std::invalid_argument("invert_mean: empty mean function");
  if (!std::isfinite(y_bar)) throw std::domain_error("invert_mean: y_bar must be finite");
  if (y_bar >= mean.y_sup)
    throw SaturationError("invert_mean: observation at or above the response ceiling",
                          mean.y_sup);

  const double lo_limit = mean.theta_floor;
  const double f_lo = mean.eval(lo_limit);
  if (y_bar <= f_lo) {
    if (std::abs(y_bar - f_lo) <= tol) return lo_limit;
    throw SaturationError("invert_mean: observation at or below the response floor", f_lo);
  }

  double lo = lo_limit;
  double hi = std::max(2.0 * lo_limit, 1.0);
  double f_hi = mean.eval(hi);
  while (f_hi < y_bar) {
    lo = hi;
    hi *= 2.0;
    if (hi > mean.theta_cap)
      throw SaturationError("invert_mean: observation exceeds the reachable response range",
                            y_bar);
    f_hi = mean.eval(hi);
  }
  // Exact hit on a bracket endpoint: return it unrounded so noiseless
  // observations invert with zero error.
  if (f_hi == y_bar) return hi;

  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f = mean.eval(mid);
    if (std::abs(f - y_bar) <= tol) return mid;
    (f < y_bar ? lo : hi) = mid;
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(mean.eval(mid) - y_bar) <= tol) return mid;
  throw ConvergenceError("invert_mean: bisection stalled before reaching tolerance " +
                         std::to_string(tol));
}

double ml_bernoulli(double y_bar) {
  if (!(y_bar > 0.0))
    throw SaturationError("ml_bernoulli: all-zeros observation has no finite estimate", 0.0);
  if (!(y_bar < 1.0))
    throw SaturationError("ml_bernoulli: all-ones observation has no finite estimate", 1.0);
  return -std::log1p(-y_bar);
}

double ml_truncated_poisson(std::span<const Sample> samples, std::uint32_t full_well) {
  if (full_well < 1) throw std::invalid_argument("ml_truncated_poisson: full_well must be >= 1");
  if (samples.empty()) throw std::invalid_argument("ml_truncated_poisson: empty sample set");

  const double n = (double)samples.size();
  long double sum_unsat = 0.0L;
  std::size_t n_unsat = 0;
  for (Sample y : samples) {
    if (y > full_well)
      throw std::invalid_argument("ml_truncated_poisson: sample exceeds full_well");
    if (y < full_well) {
      sum_unsat += (long double)y;
      ++n_unsat;
    }
  }
  if (n_unsat == 0)
    throw SaturationError("ml_truncated_poisson: every sample is saturated", (double)full_well);

  const double frac_unsat = (double)n_unsat / n;     // empirical P(Y < L)
  const double mean_unsat = (double)(sum_unsat / n);  // (1/n) sum of unsaturated values

  if (n_unsat == samples.size()) return mean_unsat;  // plain Poisson ML

  const long L = (long)full_well;
  // Score of the censored likelihood; strictly decreasing in theta.
  const auto score = [&](double th) {
    const double log_hazard =
        std::log(th) + log_poisson_pmf(L - 1, th) - log_psi_lower(L, th);
    return mean_unsat - th * frac_unsat + (1.0 - frac_unsat) * std::exp(log_hazard);
  };

  double lo = 1e-6;
  double hi = 10.0 * (double)L;
  if (!(score(lo) > 0.0) || !(score(hi) < 0.0))
    throw ConvergenceError("ml_truncated_poisson: no sign change in [1e-6, 10 L]");
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (score(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace snrlab
