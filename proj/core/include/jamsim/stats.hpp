#pragma once

#include <cstdint>
#include <vector>

namespace jamsim {

struct SummaryStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n - 1 divisor); 0 when count < 2
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  double ci_low = 0.0;   // Student-t interval at `level`
  double ci_high = 0.0;
  double level = 0.0;
  bool ci_defined = false;
};

// Samples are sorted before accumulation, so permutations of the input give
// bit-identical summaries regardless of the order replications finished in.
SummaryStats summarize(std::vector<double> samples, double level = 0.99);

double normal_cdf(double x, double mu = 0.0, double sigma = 1.0);

// Asymptotic Kolmogorov survival Q(x) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 x^2},
// clamped to [0, 1]; Q = 1 to machine precision below x = 0.2.
double ks_survival(double x);

struct KsResult {
  double statistic = 0.0;  // sup distance D
  double p_value = 1.0;    // asymptotic; conservative for tied/discrete data
};
KsResult ks_test_normal(std::vector<double> samples, double mu, double sigma);
KsResult ks_test_two_sample(std::vector<double> first, std::vector<double> second);

// Inverse CDF of Student's t with `dof` degrees of freedom.
double student_t_quantile(double p, double dof);

}  // namespace jamsim
