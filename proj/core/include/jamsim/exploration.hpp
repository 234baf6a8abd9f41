#pragma once

#include <cstdint>
#include <vector>

#include "jamsim/random_graphs.hpp"
#include "jamsim/rng.hpp"

namespace jamsim {

// Explored-count path Z_0 = 0, ..., Z_{T*} = N of one exploration run. The
// process absorbs at the first step with Z = N; by construction the number of
// active (selected) vertices at absorption equals the hitting time.
struct Trajectory {
  std::int64_t n_total = 0;
  std::vector<std::int64_t> z;

  std::int64_t hitting_time() const { return static_cast<std::int64_t>(z.size()) - 1; }
  double scaled_hitting_time() const {
    return static_cast<double>(hitting_time()) / static_cast<double>(n_total);
  }
  // Scaled step function Z^N_t = Z_{[tN]} / N, held at 1 after absorption.
  double scaled_at(double t) const;
};

// Graph exploration: repeatedly select a uniform non-explored vertex, mark it
// active, and mark its non-explored neighbors blocked, until no vertex is left.
Trajectory explore_graph(const AdjacencyGraph& graph, Rng& rng);

// One-dimensional ER reduction: Z_n = Z_{n-1} + 1 + xi_n with
// xi_n ~ Binomial(N - Z_{n-1} - 1, c/N), absorbed at N.
Trajectory simulate_er_chain(const ErParams& params, Rng& rng);

// Martingale residual M_n = Z_n - compensator, with gamma_N(x) = (N-x-1) c/N.
// The compensator term for step n uses the pre-step state Z_{n-1}, so the
// increments M_n - M_{n-1} = xi_n - gamma_N(Z_{n-1}) are conditionally mean
// zero; the constant offset fixes M_0 = -(1 + gamma_N(0)).
struct MartingaleResidual {
  std::vector<double> m;
};
MartingaleResidual martingale_residual(const Trajectory& trajectory, const ErParams& params);

// Pointwise comparison of the step distribution Bin(n - x - 1, c/n) at k with
// its Poisson limit of parameter c (1 - x/n), against the bound (c/n) * pmf.
// `holds` just reports the comparison; see the tests for where it fails.
struct PmfGap {
  double binomial_pmf = 0.0;
  double poisson_pmf = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  bool holds = false;
};
PmfGap binomial_poisson_gap(std::int64_t n, double c, std::int64_t x, std::int64_t k);

}  // namespace jamsim
