#pragma once

namespace rieszlab {

// Gamma function by a Lanczos approximation (g = 7, 9 terms) with reflection
// for x < 1/2. Throws PoleError at 0, -1, -2, ...
double gamma(double x);

// 1/Gamma(x), an entire function: returns exactly 0 at the poles of Gamma.
double rgamma(double x);

// Riemann zeta, analytically continued; s != 1.
double zeta(double s);

// Hurwitz zeta zeta(s, q) = sum_{k>=0} (k+q)^{-s}, continued to all s != 1, q > 0.
double hurwitz_zeta(double s, double q);

// Square-lattice zeta Z2(s) = sum_{l in Z^2 \ 0} |l|^{-s}, continued to s != 2.
double lattice_zeta2(double s);

// Generalized binomial coefficient binom(a, k) for real a and integer k >= 0.
double binomial(double a, int k);

// Falling factorial a (a-1) ... (a-k+1).
double falling_factorial(double a, int k);

}  // namespace rieszlab
