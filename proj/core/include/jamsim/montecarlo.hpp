#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "jamsim/exploration.hpp"
#include "jamsim/fluid.hpp"
#include "jamsim/random_graphs.hpp"
#include "jamsim/rsa.hpp"
#include "jamsim/stats.hpp"

namespace jamsim {

// Coupled runs the full three-process construction; its Z path is identical
// to ModelKind::Rsa under the same spec because the bounding processes draw
// from their own substreams.
enum class ModelKind { ErChain, ErGraph, Rsa, Coupled };

// Replicate i derives all of its randomness from (base_seed, i): substream 0
// drives the dynamics (chain draws or selection order), substream 1 the
// structure (graph or point cloud), substreams 2 and 3 the auxiliary draws of
// the coupled bounding processes. Replications are therefore independent and
// reproducible regardless of scheduling.
struct RunSpec {
  ModelKind model = ModelKind::ErChain;
  ErParams er{1000, 1.0};
  BoxGeometry box;
  CountMode count_mode = CountMode::FixedCount;
  int replications = 100;
  std::uint64_t base_seed = 20240801;
  double level = 0.99;
  RsaOptions rsa;      // coupling options for ModelKind::Rsa
  int max_parallel = 0;  // worker cap; 0 means hardware concurrency
};

// Applies fn to each index in [0, count); results must be written by index so
// the outcome does not depend on scheduling. The first exception wins.
void parallel_for_index(int count, int max_parallel, const std::function<void(int)>& fn);

std::vector<Trajectory> run_trajectories(const RunSpec& spec);
std::vector<CoupledRun> run_coupled_replications(const RunSpec& spec);

struct JammingEstimate {
  SummaryStats stats;           // of the scaled hitting times
  std::vector<double> samples;  // T_hat / N per replicate, in replicate order
};
JammingEstimate estimate_jamming(const RunSpec& spec);
JammingEstimate estimate_jamming(const std::vector<Trajectory>& trajectories, double level);

struct CltReport {
  std::vector<double> standardized;  // sqrt(N) (T_hat/N - t_star)
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double t_star = 0.0;
  double sigma2 = 0.0;
  KsResult ks;  // against Normal(0, sigma2)
};
CltReport clt_study(const RunSpec& spec, double t_star, double sigma2);
CltReport clt_study(const std::vector<Trajectory>& trajectories, double t_star, double sigma2);

// sup over the step grid {0, 1/N, 2/N, ...} up to `horizon` of |Z^N_t - z(t)|,
// evaluating the curve both at each grid point and just before the next jump.
double sup_deviation(const Trajectory& trajectory, const FluidCurve& curve, double horizon);

struct EnvelopeDeltaRow {
  double delta = 0.0;
  double empirical = 0.0;  // fraction of runs with |T_hat/N - T*| >= delta
  double bound = 0.0;      // 2 omega_N / delta, possibly vacuous (> 1)
  bool ok = true;
};
struct EnvelopeReport {
  double l2_sup_deviation = 0.0;  // sqrt(mean of squared sup-deviations)
  double omega = 0.0;
  bool l2_ok = true;  // l2_sup_deviation <= omega_N
  std::vector<EnvelopeDeltaRow> deltas;
  int replications = 0;
};
EnvelopeReport fluid_envelope_check(const RunSpec& spec, const FluidCurve& curve,
                                    const ErrorBoundReport& bound,
                                    const std::vector<double>& deltas);
EnvelopeReport fluid_envelope_check(const std::vector<Trajectory>& trajectories,
                                    const FluidCurve& curve, const ErrorBoundReport& bound,
                                    const std::vector<double>& deltas);

struct VariancePoint {
  double t = 0.0;
  double empirical_variance = 0.0;  // of sqrt(N)(Z^N_t - z(t)) across replicates
  double m_value = 0.0;
  double relative_gap = 0.0;
};
std::vector<VariancePoint> diffusion_variance_check(const RunSpec& spec,
                                                    const std::vector<double>& times,
                                                    const VarianceCurve& curve);
std::vector<VariancePoint> diffusion_variance_check(const std::vector<Trajectory>& trajectories,
                                                    double c, const std::vector<double>& times,
                                                    const VarianceCurve& curve);

}  // namespace jamsim
