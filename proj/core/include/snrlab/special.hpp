#pragma once

namespace snrlab {

// psi(L, theta) = sum_{l=0}^{L-1} theta^l e^{-theta} / l!, the lower Poisson
// tail P(X <= L-1), equivalently the regularized upper incomplete gamma
// Q(L, theta). Valid for L >= 1, theta >= 0; relative error <= 1e-12 over
// L <= 1e5, theta <= 1e6 wherever the value is representable in double.
double psi(long full_well, double theta);

// 1 - psi(L, theta) = P(X >= L), computed to full relative accuracy even
// when psi is within rounding distance of 1.
double psi_lower(long full_well, double theta);

// log(psi_lower), usable when the tail itself underflows.
double log_psi_lower(long full_well, double theta);

// d/dtheta psi(L, theta) = -theta^{L-1} e^{-theta} / (L-1)!. Strictly
// negative for theta > 0; requires L >= 1, theta > 0.
double psi_prime(long full_well, double theta);

// log Poisson pmf: k*log(theta) - theta - log(k!), for k >= 0, theta > 0.
double log_poisson_pmf(long k, double theta);

// Complementary error function (thin libm wrapper kept for interface
// symmetry with the oracle-backed tests).
double erfc_fn(double x);

// Inverse of erfc on (0, 2), by bisection with Newton polish.
double erfc_inv(double y);

// Gaussian approximation of the Poisson pmf at x for mean theta:
// exp(-(x-theta)^2 / (2 theta)) / sqrt(2 pi theta). Accurate for theta >~ 1.
double poisson_gaussian_approx(double theta, double x);

}  // namespace snrlab
