#include "jamsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace jamsim {

SummaryStats summarize(std::vector<double> samples, double level) {
  if (samples.empty()) throw std::invalid_argument("summarize: need at least one sample");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("summarize: level must lie in (0, 1)");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<std::int64_t>(samples.size());
  double sum = 0.0;
  for (double s : samples) sum += s;
  SummaryStats out;
  out.count = n;
  out.level = level;
  out.mean = sum / static_cast<double>(n);
  out.min = samples.front();
  out.max = samples.back();
  if (n >= 2) {
    double ss = 0.0;
    for (double s : samples) {
      const double d = s - out.mean;
      ss += d * d;
    }
    out.variance = ss / static_cast<double>(n - 1);
    out.stddev = std::sqrt(out.variance);
    const double t = student_t_quantile(0.5 + 0.5 * level, static_cast<double>(n - 1));
    const double half = t * out.stddev / std::sqrt(static_cast<double>(n));
    out.ci_low = out.mean - half;
    out.ci_high = out.mean + half;
    out.ci_defined = true;
  } else {
    out.ci_low = out.ci_high = out.mean;
  }
  return out;
}

double normal_cdf(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("normal_cdf: sigma must be positive");
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

double ks_survival(double x) {
  if (x < 0.2) return 1.0;  // survival is 1 - O(1e-60) here
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * static_cast<double>(j) * static_cast<double>(j) * x * x);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-14) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test_normal(std::vector<double> samples, double mu, double sigma) {
  if (samples.empty()) throw std::invalid_argument("ks_test_normal: need samples");
  if (!(sigma > 0.0)) throw std::invalid_argument("ks_test_normal: sigma must be positive");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i], mu, sigma);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return KsResult{d, ks_survival(std::sqrt(n) * d)};
}

KsResult ks_test_two_sample(std::vector<double> first, std::vector<double> second) {
  if (first.empty() || second.empty())
    throw std::invalid_argument("ks_test_two_sample: need samples on both sides");
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  const double na = static_cast<double>(first.size());
  const double nb = static_cast<double>(second.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < first.size() && j < second.size()) {
    const double v = std::min(first[i], second[j]);
    while (i < first.size() && first[i] == v) ++i;  // advance over ties together
    while (j < second.size() && second[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  const double n_eff = na * nb / (na + nb);
  return KsResult{d, ks_survival(std::sqrt(n_eff) * d)};
}

double student_t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("student_t_quantile: p must be in (0, 1)");
  if (!(dof > 0.0)) throw std::invalid_argument("student_t_quantile: dof must be positive");
  boost::math::students_t_distribution<double> dist(dof);
  return boost::math::quantile(dist, p);
}

}  // namespace jamsim
