#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "jamsim/rng.hpp"
#include "jamsim/stats.hpp"

using namespace jamsim;

TEST_CASE("summarize on a hand-checked sample") {
  // mean 2.5, variance 5/3, half-width t_{.995,3} * sqrt(5/3)/2 with
  // t_{.995,3} = 5.84091 (Student t table).
  const SummaryStats stats = summarize({1.0, 2.0, 3.0, 4.0}, 0.99);
  CHECK(stats.count == 4);
  CHECK(stats.mean == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(stats.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(stats.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));
  CHECK(stats.min == 1.0);
  CHECK(stats.max == 4.0);
  CHECK(stats.level == 0.99);
  REQUIRE(stats.ci_defined);
  const double half = 5.84091 * std::sqrt(5.0 / 3.0) / 2.0;
  CHECK(stats.ci_high - stats.mean == doctest::Approx(half).epsilon(1e-3));
  CHECK(stats.mean - stats.ci_low == doctest::Approx(stats.ci_high - stats.mean).epsilon(1e-12));
}

TEST_CASE("summaries are invariant under permutations of the sample") {
  Rng rng = make_rng(402, 0);
  std::vector<double> samples(257);
  for (double& s : samples) s = std::uniform_real_distribution<double>(-3.0, 7.0)(rng);
  const SummaryStats a = summarize(samples);
  std::shuffle(samples.begin(), samples.end(), rng);
  const SummaryStats b = summarize(samples);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
}

TEST_CASE("degenerate summaries") {
  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
  CHECK_THROWS_AS(summarize({1.0, 2.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(summarize({1.0, 2.0}, 1.0), std::invalid_argument);
  const SummaryStats one = summarize({4.25});
  CHECK(one.count == 1);
  CHECK(one.mean == 4.25);
  CHECK(one.variance == 0.0);
  CHECK_FALSE(one.ci_defined);
  CHECK(one.ci_low == one.mean);
  CHECK(one.ci_high == one.mean);
}

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.158655253931).epsilon(1e-10));
  CHECK(normal_cdf(3.0, 1.0, 2.0) == doctest::Approx(normal_cdf(1.0)).epsilon(1e-14));
}

TEST_CASE("Kolmogorov survival function") {
  // Q(1.0) from the series: 2 (e^{-2} - e^{-8} + e^{-18} - ...)
  CHECK(ks_survival(1.0) == doctest::Approx(0.26999967168).epsilon(1e-9));
  CHECK(ks_survival(0.1) == 1.0);
  CHECK(ks_survival(5.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ks_survival(0.5) > ks_survival(1.0));
}

TEST_CASE("one-sample KS accepts its own distribution and rejects a shifted one") {
  Rng rng = make_rng(77, 0);
  std::vector<double> samples(2000);
  for (double& s : samples) s = std::normal_distribution<double>(2.0, 0.5)(rng);
  const KsResult match = ks_test_normal(samples, 2.0, 0.5);
  CHECK(match.p_value > 0.01);
  CHECK(match.statistic < 0.05);
  const KsResult shifted = ks_test_normal(samples, 2.2, 0.5);
  CHECK(shifted.p_value < 1e-6);
  CHECK(shifted.statistic > match.statistic);
}

TEST_CASE("two-sample KS on hand cases and on matched generators") {
  // Identical samples: D = 0, p = 1.
  const std::vector<double> base{0.1, 0.4, 0.4, 0.9};
  const KsResult same = ks_test_two_sample(base, base);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);

  // Disjoint supports: D = 1.
  const KsResult apart = ks_test_two_sample({1.0, 2.0, 3.0}, {10.0, 11.0, 12.0});
  CHECK(apart.statistic == 1.0);

  // Same distribution, different seeds: the test should not reject.
  Rng rng_a = make_rng(78, 0);
  Rng rng_b = make_rng(79, 0);
  std::vector<double> a(1500), b(1200);
  for (double& s : a) s = std::exponential_distribution<double>(1.3)(rng_a);
  for (double& s : b) s = std::exponential_distribution<double>(1.3)(rng_b);
  const KsResult agree = ks_test_two_sample(a, b);
  CHECK(agree.p_value > 0.001);

  // Clearly different distributions are rejected.
  for (double& s : b) s *= 1.4;
  const KsResult differ = ks_test_two_sample(a, b);
  CHECK(differ.p_value < 1e-4);

  CHECK_THROWS_AS(ks_test_two_sample({}, {1.0}), std::invalid_argument);
}

TEST_CASE("student t quantiles") {
  CHECK(student_t_quantile(0.995, 3.0) == doctest::Approx(5.84091).epsilon(1e-5));
  CHECK(student_t_quantile(0.975, 1e6) == doctest::Approx(1.95996).epsilon(1e-4));
  CHECK(student_t_quantile(0.2, 7.0) == doctest::Approx(-student_t_quantile(0.8, 7.0)).epsilon(1e-12));
  CHECK_THROWS(student_t_quantile(0.0, 3.0));
  CHECK_THROWS(student_t_quantile(0.5, 0.0));
}
