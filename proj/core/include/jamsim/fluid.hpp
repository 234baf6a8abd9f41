#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "jamsim/rk4.hpp"

namespace jamsim {

// Fluid-limit curve z(t) on [0, T*] with z(T*) = 1; values are clamped at 1
// when evaluated past the hitting time.
struct FluidCurve {
  std::vector<double> grid;
  std::vector<double> values;
  double t_star = 0.0;

  double value_at(double t) const;  // linear interpolation on the grid
};

// Integrates dz/dt = 1 + gamma(z), z(0) = 0, with fixed-step RK4 and locates
// T* = inf{t : z(t) = 1} by bisecting the crossing step. gamma must be
// nonnegative on [0, 1]; a negative value raises std::domain_error.
FluidCurve integrate_fluid(const std::function<double(double)>& gamma,
                           const OdeSettings& settings = {});

// ER closed forms: z(t) = ((1+c)/c)(1 - e^{-ct}) capped at 1; c = 0 degenerates
// to z(t) = t.
double er_fluid_closed_form(double c, double t);

// m(t) = e^{-2ct} (1 - e^{ct}) (e^{ct} - 2c - 1) / (2c), the variance of the
// diffusion limit along the ER fluid path. Requires c > 0 and t >= 0.
double er_variance_closed_form(double c, double t);

struct JammingStats {
  double t_star = 0.0;       // ln(1+c)/c
  double sigma2 = 0.0;       // m(T*) / (1 - gamma(1))^2
  double m_at_t_star = 0.0;
  double divisor = 1.0;      // (1 - gamma(1))^2; equals 1 for ER where gamma(1) = 0
};
// Requires c > 0. gamma_at_one is exposed for non-ER drifts whose gamma(1) is
// nonzero; the default matches the ER case.
JammingStats er_jamming_stats(double c, double gamma_at_one = 0.0);

// Variance ODE along the ER fluid path, integrated jointly with z(t):
//   dm/dt = -2 c m + beta_dot(t),   beta_dot(t) = psi(z(t)) = c (1 - z(t)),
// which matches d/dt E[W_t^2] = 2 gamma'(z) m + beta_dot for gamma(z) = c(1-z).
struct VarianceCurve {
  std::vector<double> grid;
  std::vector<double> m_values;
  std::vector<double> beta_values;
  double t_star = 0.0;

  double m_at(double t) const;  // linear interpolation, clamped at the ends
};
VarianceCurve integrate_variance(double c, const OdeSettings& settings = {});

// Finite-N fluid error bound
//   omega_N = (delta_N T + (1 + gamma_bar)/N + 2 sqrt(psi_bar T / N)) e^{C_L T}
// with the ER readings delta_N = c/N, gamma_bar = psi_bar = C_L = c.
struct ErrorBoundReport {
  std::int64_t n = 0;
  double c = 0.0;
  double horizon = 0.0;
  double delta_n = 0.0;
  double gamma_bar = 0.0;
  double psi_bar = 0.0;
  double lipschitz = 0.0;
  double omega = 0.0;
  double constant = 1.0;  // the configurable C in Omega_N = C * omega_N
  double big_omega = 0.0;

  // Tail bound P(|T*_N/N - T*| >= delta) <= 2 omega_N / delta; may exceed 1,
  // in which case it is vacuous but still valid.
  double deviation_bound(double delta) const;
};
ErrorBoundReport er_error_bound(std::int64_t n, double c, double horizon, double constant = 1.0);

// Second-order small-c expansion of the fluid curve (and of both RSA bound
// curves): (1+c) t - c t^2 / 2.
double small_c_expansion(double c, double t);

}  // namespace jamsim
