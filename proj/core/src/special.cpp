#include "snrlab/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace snrlab {
namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

// log(k!) tail correction of the Stirling series; four terms keep the
// truncation error below 1/(1188 k^9) ~ 1.2e-14 at the k = 16 switch point.
long double stirling_correction(long double k) {
  const long double k2 = k * k;
  return 1.0L / (12.0L * k) - 1.0L / (360.0L * k * k2) + 1.0L / (1260.0L * k2 * k2 * k) -
         1.0L / (1680.0L * k2 * k2 * k2 * k);
}

// log(theta^k e^{-theta} / k!). The k >= 16 branch groups k*log(theta/k)
// with (k - theta) so the two large magnitudes cancel before rounding.
long double log_poisson_pmf_ld(long k, long double theta) {
  if (k < 16) return k * logl(theta) - theta - lgammal((long double)k + 1.0L);
  const long double kd = (long double)k;
  return kd * logl(theta / kd) + (kd - theta) - 0.5L * logl(2.0L * kPi * kd) -
         stirling_correction(kd);
}

// log(theta^a e^{-theta} / Gamma(a)) for integer a >= 1.
long double log_gamma_prefactor(long a, long double theta) {
  return log_poisson_pmf_ld(a, theta) + logl((long double)a);
}

// Sum of Poisson weights l = 0..L-1, anchored at the largest term so the
// accumulation never leaves the representable range.
double psi_series(long L, double theta) {
  const long double t = theta;
  const long k0 = std::min<long>(L - 1, (long)theta);
  const long double log_t0 = log_poisson_pmf_ld(k0, t);

  long double sum = 1.0L;
  long double term = 1.0L;
  for (long k = k0; k > 0; --k) {
    term *= (long double)k / t;
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  term = 1.0L;
  for (long k = k0 + 1; k < L; ++k) {
    term *= t / (long double)k;
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  const long double value = expl(log_t0 + logl(sum));
  return (double)std::min(1.0L, value);
}

// Modified Lentz continued fraction for Q(a, x); requires x well above a,
// which the caller guarantees (x > a + 10 sqrt(a)).
double psi_continued_fraction(long a, double x) {
  constexpr long double kTiny = 1e-4000L;
  constexpr long double kEps = 1e-19L;
  const long double ad = (long double)a;
  long double b = x + 1.0L - ad;
  long double c = 1.0L / kTiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const long double an = -(long double)i * ((long double)i - ad);
    b += 2.0L;
    d = an * d + b;
    if (fabsl(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (fabsl(c) < kTiny) c = kTiny;
    d = 1.0L / d;
    const long double del = d * c;
    h *= del;
    if (fabsl(del - 1.0L) < kEps) break;
  }
  const long double value = expl(log_gamma_prefactor(a, x)) * h;
  return (double)std::min(1.0L, std::max(0.0L, value));
}

void check_domain(long L, double theta, const char* fn) {
  if (L < 1) throw std::domain_error(std::string(fn) + ": full_well index must be >= 1");
  if (!(theta >= 0.0)) throw std::domain_error(std::string(fn) + ": theta must be >= 0");
}

}  // namespace

double psi(long full_well, double theta) {
  check_domain(full_well, theta, "psi");
  if (theta == 0.0) return 1.0;
  if (theta > (double)full_well + 10.0 * std::sqrt((double)full_well))
    return psi_continued_fraction(full_well, theta);
  return psi_series(full_well, theta);
}

double psi_lower(long full_well, double theta) {
  check_domain(full_well, theta, "psi_lower");
  if (theta == 0.0) return 0.0;
  const double head = psi(full_well, theta);
  if (head <= 0.99) return 1.0 - head;
  // Head mass near 1: sum the upper tail directly to keep relative accuracy.
  const long double t = theta;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (long k = full_well + 1; k < full_well + 100000; ++k) {
    term *= t / (long double)k;
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  const long double value = expl(log_poisson_pmf_ld(full_well, t) + logl(sum));
  return (double)std::min(1.0L, value);
}

double log_psi_lower(long full_well, double theta) {
  check_domain(full_well, theta, "log_psi_lower");
  if (theta == 0.0) return -std::numeric_limits<double>::infinity();
  const double lower = psi_lower(full_well, theta);
  // Subnormal tails carry too few mantissa bits for an accurate log.
  if (lower >= std::numeric_limits<double>::min()) return std::log(lower);
  // (Sub-)underflowed tail: theta is far below full_well, so the series
  // prefactor dominates and the correction sum is O(1); stay in log space.
  const long double t = theta;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (long k = full_well + 1; k < full_well + 100000; ++k) {
    term *= t / (long double)k;
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  return (double)(log_poisson_pmf_ld(full_well, t) + logl(sum));
}

double psi_prime(long full_well, double theta) {
  if (full_well < 1) throw std::domain_error("psi_prime: full_well index must be >= 1");
  if (!(theta > 0.0)) throw std::domain_error("psi_prime: theta must be > 0");
  return -std::exp((double)log_poisson_pmf_ld(full_well - 1, theta));
}

double log_poisson_pmf(long k, double theta) {
  if (k < 0) throw std::domain_error("log_poisson_pmf: k must be >= 0");
  if (!(theta > 0.0)) throw std::domain_error("log_poisson_pmf: theta must be > 0");
  return (double)log_poisson_pmf_ld(k, theta);
}

double erfc_fn(double x) { return std::erfc(x); }

double erfc_inv(double y) {
  if (!(y > 0.0 && y < 2.0)) throw std::domain_error("erfc_inv: argument must lie in (0, 2)");
  if (y == 1.0) return 0.0;
  if (y > 1.0) return -erfc_inv(2.0 - y);
  double lo = 0.0;
  double hi = 1.0;
  while (std::erfc(hi) > y) {
    hi *= 2.0;
    if (hi > 40.0) break;  // erfc(40) < 1e-695 underflows; y > 0 must bracket by here
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (std::erfc(mid) > y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double poisson_gaussian_approx(double theta, double x) {
  if (!(theta > 0.0)) throw std::domain_error("poisson_gaussian_approx: theta must be > 0");
  const double d = x - theta;
  return std::exp(-d * d / (2.0 * theta)) / std::sqrt(2.0 * (double)kPi * theta);
}

}  // namespace snrlab
