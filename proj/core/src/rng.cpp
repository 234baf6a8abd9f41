#include "jamsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace jamsim {

std::int64_t sample_binomial(std::int64_t n, double p, Rng& rng) {
  if (n < 0) throw std::invalid_argument("sample_binomial: n must be nonnegative");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_binomial: p must lie in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(n, 1.0 - p, rng);

  const double np = static_cast<double>(n) * p;
  if (np <= 30.0) {
    // CDF inversion walk; pmf recurrence keeps it exact up to rounding and the
    // expected iteration count is np + O(1).
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
    const double odds = p / (1.0 - p);
    double cdf = pmf;
    std::int64_t k = 0;
    while (u > cdf && k < n) {
      pmf *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
      ++k;
      cdf += pmf;
    }
    return k;
  }

  // Mid-p fallback: exact but O(n). Not reached by the sparse chain regime.
  std::bernoulli_distribution coin(p);
  std::int64_t k = 0;
  for (std::int64_t i = 0; i < n; ++i) k += coin(rng) ? 1 : 0;
  return k;
}

}  // namespace jamsim
