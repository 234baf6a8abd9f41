#include "jamsim/exploration.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jamsim {

double Trajectory::scaled_at(double t) const {
  if (t < 0.0) throw std::invalid_argument("Trajectory::scaled_at: t must be nonnegative");
  if (z.empty() || n_total <= 0) throw std::logic_error("Trajectory::scaled_at: empty trajectory");
  // The tiny offset keeps [tN] stable when t N is an integer up to rounding.
  auto idx = static_cast<std::int64_t>(std::floor(t * static_cast<double>(n_total) + 1e-9));
  idx = std::min(idx, hitting_time());
  return static_cast<double>(z[static_cast<std::size_t>(idx)]) / static_cast<double>(n_total);
}

Trajectory explore_graph(const AdjacencyGraph& graph, Rng& rng) {
  const std::int64_t n = graph.vertex_count();
  if (n < 1) throw std::invalid_argument("explore_graph: graph must have at least one vertex");

  // Swap-remove pool of non-explored vertices; pos[v] tracks v's pool slot.
  std::vector<std::int32_t> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::int32_t> pos(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<char> explored(static_cast<std::size_t>(n), 0);
  auto remove_from_pool = [&](std::int32_t v) {
    const std::int32_t slot = pos[static_cast<std::size_t>(v)];
    const std::int32_t last = pool.back();
    pool[static_cast<std::size_t>(slot)] = last;
    pos[static_cast<std::size_t>(last)] = slot;
    pool.pop_back();
  };

  Trajectory traj;
  traj.n_total = n;
  traj.z.push_back(0);
  std::int64_t zcur = 0;
  std::int64_t active = 0;
  while (!pool.empty()) {
    const auto pick =
        std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
    const std::int32_t v = pool[pick];
    remove_from_pool(v);
    explored[static_cast<std::size_t>(v)] = 1;
    ++active;
    std::int64_t blocked = 0;
    for (std::int32_t u : graph.neighbors[static_cast<std::size_t>(v)]) {
      if (!explored[static_cast<std::size_t>(u)]) {
        explored[static_cast<std::size_t>(u)] = 1;
        remove_from_pool(u);
        ++blocked;
      }
    }
    zcur += 1 + blocked;
    traj.z.push_back(zcur);
  }
  if (zcur != n || active != traj.hitting_time())
    throw std::logic_error("explore_graph: bookkeeping invariant violated");
  return traj;
}

Trajectory simulate_er_chain(const ErParams& params, Rng& rng) {
  validate(params);
  const std::int64_t n = params.n;
  const double p = params.c / static_cast<double>(n);
  Trajectory traj;
  traj.n_total = n;
  traj.z.push_back(0);
  std::int64_t zcur = 0;
  while (zcur < n) {
    const std::int64_t trials = n - zcur - 1;  // trials = 0 forces xi = 0
    const std::int64_t xi = sample_binomial(trials, p, rng);
    zcur += 1 + xi;
    traj.z.push_back(zcur);
  }
  return traj;
}

MartingaleResidual martingale_residual(const Trajectory& trajectory, const ErParams& params) {
  validate(params);
  if (trajectory.n_total != params.n)
    throw std::invalid_argument("martingale_residual: trajectory size does not match params.n");
  const double n = static_cast<double>(params.n);
  auto gamma = [&](std::int64_t x) {
    return (n - static_cast<double>(x) - 1.0) * params.c / n;
  };
  MartingaleResidual res;
  res.m.resize(trajectory.z.size());
  res.m[0] = static_cast<double>(trajectory.z[0]) - (1.0 + gamma(trajectory.z[0]));
  for (std::size_t i = 1; i < trajectory.z.size(); ++i) {
    const double increment =
        static_cast<double>(trajectory.z[i] - trajectory.z[i - 1]) - (1.0 + gamma(trajectory.z[i - 1]));
    res.m[i] = res.m[i - 1] + increment;
  }
  return res;
}

namespace {

double binomial_pmf(std::int64_t n, double p, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double lognck = std::lgamma(static_cast<double>(n) + 1.0) -
                        std::lgamma(static_cast<double>(k) + 1.0) -
                        std::lgamma(static_cast<double>(n - k) + 1.0);
  return std::exp(lognck + static_cast<double>(k) * std::log(p) +
                  static_cast<double>(n - k) * std::log1p(-p));
}

double poisson_pmf(double lambda, std::int64_t k) {
  if (k < 0) return 0.0;
  if (lambda <= 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

}  // namespace

PmfGap binomial_poisson_gap(std::int64_t n, double c, std::int64_t x, std::int64_t k) {
  if (n < 1 || x < 0 || x >= n || k < 0)
    throw std::invalid_argument("binomial_poisson_gap: need n >= 1, 0 <= x < n, k >= 0");
  if (c < 0.0 || c > static_cast<double>(n))
    throw std::invalid_argument("binomial_poisson_gap: need 0 <= c <= n");
  PmfGap out;
  out.binomial_pmf = binomial_pmf(n - x - 1, c / static_cast<double>(n), k);
  const double lambda = c * (1.0 - static_cast<double>(x) / static_cast<double>(n));
  out.poisson_pmf = poisson_pmf(lambda, k);
  out.gap = std::abs(out.binomial_pmf - out.poisson_pmf);
  out.bound = (c / static_cast<double>(n)) * out.poisson_pmf;
  out.holds = out.gap <= out.bound;
  return out;
}

}  // namespace jamsim
