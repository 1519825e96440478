#pragma once

// Brute-force reference implementations used only by the test suite.
// Everything here is computed from first principles (pmf summation in
// extended precision, quadrature, bisection, exhaustive search) so that the
// library's closed forms are checked against an independent route.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Poisson pmf machinery (extended precision, ascending recurrence).
// ---------------------------------------------------------------------------

// pmf(k; theta) for k = 0..count-1 via term_{k+1} = term_k * theta / (k+1).
inline std::vector<long double> poisson_pmf_table(long double theta, std::size_t count) {
  std::vector<long double> pmf(count);
  long double term = std::exp(-theta);
  for (std::size_t k = 0; k < count; ++k) {
    pmf[k] = term;
    term *= theta / static_cast<long double>(k + 1);
  }
  return pmf;
}

// P(X <= L-1) by direct summation of the first L terms.
inline long double psi_brute(long full_well, long double theta) {
  if (full_well <= 0) return 0.0L;
  long double term = std::exp(-theta);
  long double sum = 0.0L;
  for (long k = 0; k < full_well; ++k) {
    sum += term;
    term *= theta / static_cast<long double>(k + 1);
  }
  return sum;
}

// P(X >= L) summed upward from k = L, avoiding any 1 - sum cancellation.
// The walk continues past the Poisson mode until terms stop mattering.
inline long double poisson_tail_brute(long full_well, long double theta) {
  long double term = std::exp(-theta);
  for (long k = 0; k < full_well; ++k) term *= theta / static_cast<long double>(k + 1);
  long double sum = 0.0L;
  const long far_edge =
      full_well + static_cast<long>(theta + 60.0L * std::sqrt(theta + 1.0L)) + 60;
  for (long k = full_well; k <= far_edge; ++k) {
    sum += term;
    term *= theta / static_cast<long double>(k + 1);
    if (k > static_cast<long>(theta) && term < sum * 1e-30L) break;
  }
  return sum;
}

struct BruteMoments {
  long double mean;
  long double variance;
  long double dmu;
};

// Mean, variance, and d(mean)/d(theta) of Y = min(Poisson(theta), L) by
// literal summation. The variance is accumulated in centered form (every
// term nonnegative) and the derivative uses d pmf_k / d theta =
// pmf_k * (k/theta - 1) applied to mean = L + sum_{k<L} (k - L) pmf_k.
inline BruteMoments truncated_moments_brute(long full_well, long double theta) {
  const long L = full_well;
  const auto pmf = poisson_pmf_table(theta, static_cast<std::size_t>(L));
  const long double tail = poisson_tail_brute(L, theta);

  long double mean = static_cast<long double>(L) * tail;
  for (long k = 0; k < L; ++k) mean += static_cast<long double>(k) * pmf[k];

  long double var;
  if (theta > static_cast<long double>(L)) {
    // Deep saturation: mean -> L, so the centered sum below would square the
    // rounding of (L - mean) into the result. The deficiency D = L - Y gives
    // the same variance from all-positive sums with full relative accuracy,
    // and a sharper mean as L - E[D].
    long double e1 = 0.0L, e2 = 0.0L;
    for (long k = 0; k < L; ++k) {
      const long double d = static_cast<long double>(L - k);
      e1 += d * pmf[k];
      e2 += d * d * pmf[k];
    }
    mean = static_cast<long double>(L) - e1;
    var = e2 - e1 * e1;
  } else {
    var = (static_cast<long double>(L) - mean) * (static_cast<long double>(L) - mean) * tail;
    for (long k = 0; k < L; ++k) {
      const long double d = static_cast<long double>(k) - mean;
      var += d * d * pmf[k];
    }
  }

  long double dmu = 0.0L;
  for (long k = 0; k < L; ++k)
    dmu += (static_cast<long double>(k) - static_cast<long double>(L)) * pmf[k] *
           (static_cast<long double>(k) / theta - 1.0L);

  return {mean, var, dmu};
}

// ---------------------------------------------------------------------------
// Gaussian tail and one-bit statistics.
// ---------------------------------------------------------------------------

// P(N(0,1) > x) in extended precision.
inline long double gauss_upper(long double x) {
  return 0.5L * std::erfc(x / std::sqrt(2.0L));
}

// erfc(x) by adaptive Simpson quadrature of the Gaussian density on
// [x, x + 12] (the remainder beyond 12 standard deviations is below any
// tolerance used by the tests). Independent of libm's erfc.
inline long double erfc_quadrature(long double x) {
  const long double scale = 2.0L / std::sqrt(std::acos(-1.0L));  // 2/sqrt(pi)
  auto f = [&](long double t) { return scale * std::exp(-t * t); };
  std::function<long double(long double, long double, long double, long double,
                            long double, long double, int)>
      simpson = [&](long double a, long double b, long double fa, long double fb,
                    long double fm, long double whole, int depth) -> long double {
    const long double m = 0.5L * (a + b);
    const long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    const long double flm = f(lm), frm = f(rm);
    const long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 1e-22L)
      return left + right + (left + right - whole) / 15.0L;
    return simpson(a, m, fa, fm, flm, left, depth - 1) +
           simpson(m, b, fm, fb, frm, right, depth - 1);
  };
  const long double a = x, b = x + 12.0L;
  const long double fa = f(a), fb = f(b), fm = f(0.5L * (a + b));
  const long double whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
  return simpson(a, b, fa, fb, fm, whole, 48);
}

// P(Y = 1) for Y = 1{Poisson(theta) + N(0, sigma^2) >= q}, by direct
// pmf x Gaussian-tail summation. sigma == 0 degenerates to the Poisson tail
// above ceil(q) (comparison is >= q on integer counts).
inline long double one_bit_p1_brute(long double theta, long double q, long double sigma) {
  const long ceil_q = static_cast<long>(std::ceil(static_cast<double>(q)));
  if (sigma == 0.0L) return poisson_tail_brute(std::max(ceil_q, 0L), theta);
  long double term = std::exp(-theta);
  long double p1 = 0.0L;
  long double mass = 0.0L;
  const long far_edge = static_cast<long>(theta + 60.0L * std::sqrt(theta + 1.0L)) + 60;
  for (long k = 0; k <= far_edge; ++k) {
    p1 += term * gauss_upper((q - static_cast<long double>(k)) / sigma);
    mass += term;
    term *= theta / static_cast<long double>(k + 1);
    if (1.0L - mass < 1e-25L) break;
  }
  return p1;
}

// Shannon entropy in bits of a Bernoulli(p).
inline long double entropy_bits(long double p) {
  if (p <= 0.0L || p >= 1.0L) return 0.0L;
  return -(p * std::log2(p) + (1.0L - p) * std::log2(1.0L - p));
}

// Wrong-decision probability of the two-level read under Gaussian noise:
// the pixel is dark with probability P(X < q) and bright otherwise; dark
// pixels read 0 + noise, bright pixels read 1 + noise, and the comparator
// sits at q.
inline long double ber_brute(long double theta, long double q, long double sigma) {
  const long ceil_q = static_cast<long>(std::ceil(static_cast<double>(q)));
  const long double p_dark = psi_brute(ceil_q, theta);
  return gauss_upper(q / sigma) * p_dark +
         gauss_upper((1.0L - q) / sigma) * (1.0L - p_dark);
}

// ---------------------------------------------------------------------------
// Generic solvers and search helpers.
// ---------------------------------------------------------------------------

// Bisection for f(x) = 0 on [lo, hi]; requires a sign change.
inline long double bisect(const std::function<long double(long double)>& f,
                          long double lo, long double hi, int iterations = 200) {
  long double flo = f(lo);
  if (flo == 0.0L) return lo;
  if (f(hi) == 0.0L) return hi;
  if ((flo > 0.0L) == (f(hi) > 0.0L))
    throw std::invalid_argument("bisect: no sign change on the bracket");
  for (int i = 0; i < iterations; ++i) {
    const long double mid = 0.5L * (lo + hi);
    const long double fm = f(mid);
    if ((fm > 0.0L) == (flo > 0.0L)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5L * (lo + hi);
}

// Exhaustive argmax of f over integers [lo, hi]. Values within rel_band of
// the maximum count as ties and the largest tied index wins, so that exact
// ties at integer-valued parameters resolve deterministically.
template <typename F>
inline long argmax_ties_largest(F&& f, long lo, long hi, double rel_band = 1e-12) {
  long double best = -1e4932L;
  for (long k = lo; k <= hi; ++k) best = std::max(best, static_cast<long double>(f(k)));
  for (long k = hi; k >= lo; --k) {
    const long double v = f(k);
    if (v >= best - std::fabs(best) * static_cast<long double>(rel_band)) return k;
  }
  return lo;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Pearson correlation of two equally long sequences.
inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace oracle
