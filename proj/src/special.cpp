#include "qphase/special.hpp"

#include <stdexcept>

namespace qphase::special {

double ln_binomial(double x, long k) {
  if (k < 0 || !(x - static_cast<double>(k) > -1.0)) {
    throw std::invalid_argument("ln_binomial: Gamma argument not positive");
  }
  return std::lgamma(x + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(x - static_cast<double>(k) + 1.0);
}

double ln_pochhammer(double x, long r) {
  if (!(x > 0.0) || r < 0) {
    throw std::invalid_argument("ln_pochhammer: requires x > 0, r >= 0");
  }
  return std::lgamma(x + static_cast<double>(r)) - std::lgamma(x);
}

double laguerre_at_negative(int m, double y) {
  if (m < 0 || y < 0.0) {
    throw std::invalid_argument("laguerre_at_negative: requires m, y >= 0");
  }
  double prev = 1.0;       // L_0
  double curr = 1.0 + y;   // L_1 at -y
  if (m == 0) return prev;
  for (int k = 1; k < m; ++k) {
    // L_{k+1}(-y) = ((2k+1+y) L_k - k L_{k-1}) / (k+1), all terms positive
    const double next = ((2.0 * k + 1.0 + y) * curr - k * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double sqrt_factorial_ratio(long n, int k) {
  if (k < 0 || n < 0) {
    throw std::invalid_argument("sqrt_factorial_ratio: negative order");
  }
  // (n+k)^k stays in double range up to ~k*log10(n+k) < 300
  const double top = static_cast<double>(n + k);
  if (k > 0 && k * std::log10(top) > 300.0) {
    return std::exp(0.5 * (std::lgamma(top + 1.0) -
                           std::lgamma(static_cast<double>(n) + 1.0)));
  }
  double prod = 1.0;
  for (int i = 1; i <= k; ++i) prod *= static_cast<double>(n + i);
  return std::sqrt(prod);
}

}  // namespace qphase::special
