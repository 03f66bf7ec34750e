#pragma once

#include <cmath>

namespace qphase::special {

/// ln(n!) through lgamma; valid for any real n > -1.
inline double ln_factorial(double n) { return std::lgamma(n + 1.0); }

/// ln C(x, k) for real x and integer k >= 0, defined through Gamma
/// functions.  Requires x - k > -1 so that every Gamma argument is
/// positive (the caller's parameter domain guarantees this).
double ln_binomial(double x, long k);

/// ln (x)_r, the rising factorial Gamma(x+r)/Gamma(x), for x > 0, r >= 0.
double ln_pochhammer(double x, long r);

/// Laguerre polynomial L_m evaluated at -y for y >= 0.  Uses the upward
/// three-term recurrence; every term is positive for negative argument,
/// so there is no cancellation.
double laguerre_at_negative(int m, double y);

/// sqrt((n+k)!/n!) = sqrt((n+1)(n+2)...(n+k)).  Computed as a running
/// product, which is exact to rounding and cannot overflow for the
/// k, n ranges this library touches; falls back to exp(lgamma
/// differences) if the product would leave double range.
double sqrt_factorial_ratio(long n, int k);

}  // namespace qphase::special
