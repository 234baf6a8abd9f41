#pragma once

#include <array>
#include <cstddef>
#include <utility>

namespace jamsim {

struct OdeSettings {
  double step = 1e-4;            // fixed RK4 step
  double root_tolerance = 1e-12; // bracket width for the hitting-time bisection
  double max_time = 10.0;        // safety horizon; slopes >= 1 hit well before this
};

namespace detail {

// One classical RK4 step for f : (t, y) -> dy/dt.
template <std::size_t K, class F>
std::array<double, K> rk4_step(F&& f, double t, const std::array<double, K>& y, double h) {
  std::array<double, K> k1 = f(t, y);
  std::array<double, K> tmp;
  for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  std::array<double, K> k2 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  std::array<double, K> k3 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * k3[i];
  std::array<double, K> k4 = f(t + h, tmp);
  std::array<double, K> out;
  for (std::size_t i = 0; i < K; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// The component `obs` crossed `target` inside (t0, t0 + h]. Bisects the partial
// step length until the bracket is below tol; returns the step fraction s and
// the state at the crossing. Assumes the observable is increasing in s.
template <std::size_t K, class F>
std::pair<double, std::array<double, K>> refine_crossing(F&& f, double t0,
                                                         const std::array<double, K>& y0, double h,
                                                         std::size_t obs, double target,
                                                         double tol) {
  double lo = 0.0, hi = h;
  std::array<double, K> at_hi = rk4_step(f, t0, y0, h);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    std::array<double, K> y_mid = rk4_step(f, t0, y0, mid);
    if (y_mid[obs] >= target) {
      hi = mid;
      at_hi = y_mid;
    } else {
      lo = mid;
    }
  }
  at_hi[obs] = target;
  return {hi, at_hi};
}

}  // namespace detail
}  // namespace jamsim
