#include "jamsim/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jamsim {

namespace {

double interpolate(const std::vector<double>& grid, const std::vector<double>& values, double t) {
  if (grid.empty()) throw std::logic_error("curve is empty");
  if (t <= grid.front()) return values.front();
  if (t >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - grid[lo]) / (grid[hi] - grid[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

}  // namespace

double FluidCurve::value_at(double t) const {
  if (t >= t_star) return 1.0;
  return interpolate(grid, values, t);
}

FluidCurve integrate_fluid(const std::function<double(double)>& gamma, const OdeSettings& settings) {
  if (!(settings.step > 0.0)) throw std::invalid_argument("integrate_fluid: step must be positive");
  // Stage states may overshoot [0, 1] slightly inside the crossing step; gamma
  // is only consulted on the clamped value, where negativity is a user error.
  auto g = [&](double z) {
    const double zc = std::clamp(z, 0.0, 1.0);
    const double value = gamma(zc);
    if (value < 0.0) throw std::domain_error("integrate_fluid: gamma(z) must be nonnegative on [0, 1]");
    return value;
  };
  auto f = [&](double, const std::array<double, 1>& y) {
    return std::array<double, 1>{1.0 + g(y[0])};
  };

  FluidCurve curve;
  curve.grid.push_back(0.0);
  curve.values.push_back(0.0);
  double t = 0.0;
  std::array<double, 1> y{0.0};
  while (t < settings.max_time) {
    const std::array<double, 1> next = detail::rk4_step(f, t, y, settings.step);
    if (next[0] >= 1.0) {
      const auto [s, y_hit] =
          detail::refine_crossing(f, t, y, settings.step, 0, 1.0, settings.root_tolerance);
      curve.t_star = t + s;
      curve.grid.push_back(curve.t_star);
      curve.values.push_back(y_hit[0]);
      return curve;
    }
    t += settings.step;
    y = next;
    curve.grid.push_back(t);
    curve.values.push_back(y[0]);
  }
  throw std::runtime_error("integrate_fluid: no crossing before max_time (slope should be >= 1)");
}

double er_fluid_closed_form(double c, double t) {
  if (c < 0.0) throw std::invalid_argument("er_fluid_closed_form: c must be nonnegative");
  if (t < 0.0) throw std::invalid_argument("er_fluid_closed_form: t must be nonnegative");
  if (c == 0.0) return std::min(t, 1.0);
  const double z = -(1.0 + c) / c * std::expm1(-c * t);
  return std::min(z, 1.0);
}

double er_variance_closed_form(double c, double t) {
  if (!(c > 0.0)) throw std::invalid_argument("er_variance_closed_form: c must be positive");
  if (t < 0.0) throw std::invalid_argument("er_variance_closed_form: t must be nonnegative");
  const double e = std::exp(c * t);
  return std::exp(-2.0 * c * t) * (1.0 - e) * (e - 2.0 * c - 1.0) / (2.0 * c);
}

JammingStats er_jamming_stats(double c, double gamma_at_one) {
  if (!(c > 0.0)) throw std::invalid_argument("er_jamming_stats: c must be positive");
  JammingStats stats;
  stats.t_star = std::log1p(c) / c;
  stats.m_at_t_star = er_variance_closed_form(c, stats.t_star);
  stats.divisor = (1.0 - gamma_at_one) * (1.0 - gamma_at_one);
  if (!(stats.divisor > 0.0))
    throw std::invalid_argument("er_jamming_stats: gamma(1) = 1 makes the variance divisor zero");
  stats.sigma2 = stats.m_at_t_star / stats.divisor;
  return stats;
}

double VarianceCurve::m_at(double t) const { return interpolate(grid, m_values, t); }

VarianceCurve integrate_variance(double c, const OdeSettings& settings) {
  if (!(c > 0.0)) throw std::invalid_argument("integrate_variance: c must be positive");
  if (!(settings.step > 0.0)) throw std::invalid_argument("integrate_variance: step must be positive");
  // State (z, m, beta); psi(z) = c (1 - z) is evaluated on the clamped z so the
  // crossing step cannot inject a negative rate.
  auto f = [&](double, const std::array<double, 3>& y) {
    const double psi = c * (1.0 - std::clamp(y[0], 0.0, 1.0));
    return std::array<double, 3>{1.0 + c * (1.0 - std::clamp(y[0], 0.0, 1.0)),
                                 -2.0 * c * y[1] + psi, psi};
  };

  VarianceCurve curve;
  curve.grid.push_back(0.0);
  curve.m_values.push_back(0.0);
  curve.beta_values.push_back(0.0);
  double t = 0.0;
  std::array<double, 3> y{0.0, 0.0, 0.0};
  while (t < settings.max_time) {
    const std::array<double, 3> next = detail::rk4_step(f, t, y, settings.step);
    if (next[0] >= 1.0) {
      const auto [s, y_hit] =
          detail::refine_crossing(f, t, y, settings.step, 0, 1.0, settings.root_tolerance);
      curve.t_star = t + s;
      curve.grid.push_back(curve.t_star);
      curve.m_values.push_back(y_hit[1]);
      curve.beta_values.push_back(y_hit[2]);
      return curve;
    }
    t += settings.step;
    y = next;
    curve.grid.push_back(t);
    curve.m_values.push_back(y[1]);
    curve.beta_values.push_back(y[2]);
  }
  throw std::runtime_error("integrate_variance: no crossing before max_time");
}

double ErrorBoundReport::deviation_bound(double delta) const {
  if (!(delta > 0.0)) throw std::invalid_argument("deviation_bound: delta must be positive");
  return 2.0 * omega / delta;
}

ErrorBoundReport er_error_bound(std::int64_t n, double c, double horizon, double constant) {
  if (n < 1) throw std::invalid_argument("er_error_bound: n must be at least 1");
  if (!(c > 0.0)) throw std::invalid_argument("er_error_bound: c must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("er_error_bound: horizon must be positive");
  ErrorBoundReport report;
  report.n = n;
  report.c = c;
  report.horizon = horizon;
  report.delta_n = c / static_cast<double>(n);
  report.gamma_bar = c;
  report.psi_bar = c;
  report.lipschitz = c;
  const double nn = static_cast<double>(n);
  report.omega = (report.delta_n * horizon + (1.0 + report.gamma_bar) / nn +
                  2.0 * std::sqrt(report.psi_bar * horizon / nn)) *
                 std::exp(report.lipschitz * horizon);
  report.constant = constant;
  report.big_omega = constant * report.omega;
  return report;
}

double small_c_expansion(double c, double t) { return (1.0 + c) * t - 0.5 * c * t * t; }

}  // namespace jamsim
