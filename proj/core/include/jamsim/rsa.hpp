#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jamsim/exploration.hpp"
#include "jamsim/random_graphs.hpp"
#include "jamsim/region.hpp"
#include "jamsim/rk4.hpp"
#include "jamsim/rng.hpp"

namespace jamsim {

struct RsaOptions {
  double cell_factor = 1.0 / 64.0;  // raster cell = cell_factor * r (d=2 only)
  double area_tol_factor = 1e-3;    // |S~_n| tolerance = factor * v
  bool with_upper = false;
  bool with_lower = false;
  bool keep_region = false;  // retain the final explored region in the result

  // Which process's step areas feed the running sum in alpha_n.
  enum class AlphaSource { ZAreas, LAreas };
  AlphaSource alpha_source = AlphaSource::ZAreas;
};

// One exploration run over a point cloud. For the lower process the recorded
// step area is v on accepted steps and 0 otherwise (its region is never
// rasterized), so `region` stays empty for it even with keep_region set.
struct RsaRun {
  Trajectory trajectory;
  std::vector<double> step_areas;
  std::vector<std::int32_t> selection_order;  // activated point per step
  std::vector<Vec2> selection_positions;
  double explored_measure = 0.0;
  std::optional<ExploredRegion> region;
};

// Z together with the bounding processes, driven by shared selection
// randomness: the same cloud and the same selected points X_n. The upper
// process inflates each step to a radius r~_n whose free area reaches v; the
// lower process explores the full ball with probability alpha_n and only the
// selected point otherwise. Pathwise L_n <= Z_n <= U_n at every step.
struct CoupledRun {
  RsaRun z;
  std::optional<RsaRun> upper;
  std::optional<RsaRun> lower;
  std::vector<double> r_tilde;    // per step while the upper process is active
  std::vector<char> saturated;    // r~ search hit the box diagonal
  std::vector<double> alpha;      // per step while the lower process is active
};

// Independent streams so that the Z path is unchanged whether or not the
// bounding processes run: selection draws come only from `selection`, the
// upper re-picks from `upper_aux`, the lower coins (and its continuation
// picks after Z absorbs) from `lower_aux`.
struct RsaStreams {
  Rng selection;
  Rng upper_aux;
  Rng lower_aux;
};
RsaStreams make_rsa_streams(std::uint64_t base_seed, std::uint64_t replicate);

RsaRun run_rsa(const PointCloud& cloud, const BoxGeometry& geom, Rng& selection,
               const RsaOptions& options = {});
CoupledRun run_coupled(const PointCloud& cloud, const BoxGeometry& geom, RsaStreams& streams,
                       const RsaOptions& options);
// Convenience wrappers that switch on one side only.
CoupledRun run_coupled_upper(const PointCloud& cloud, const BoxGeometry& geom, RsaStreams& streams,
                             RsaOptions options = {});
CoupledRun run_coupled_lower(const PointCloud& cloud, const BoxGeometry& geom, RsaStreams& streams,
                             RsaOptions options = {});

// Fluid-scale bound curves: upper u(t) solves u' = 1 + c y, y' = -y/(1-u) and
// hits 1 at T_lower; lower l(t) = w1 solves
//   w1' = 1 + max{0, c (1 - 3 c t w2 / (1 - w1)) w2},  w2' = -w2/(1 - w1),
// and hits 1 at T_upper, so T_lower <= T* <= T_upper. Values are clamped at 1
// past each curve's own hitting time.
struct BoundCurves {
  std::vector<double> grid;
  std::vector<double> u_values;
  std::vector<double> l_values;
  std::vector<double> w2_values;
  double t_lower = 0.0;
  double t_upper = 0.0;

  double u_at(double t) const;
  double l_at(double t) const;
};
BoundCurves integrate_bounds(double c, const OdeSettings& settings = {});

// Closed form of the upper curve, c t + (t - 1/c) ln(1 - c t), capped at 1.
double rsa_upper_closed_form(double c, double t);

// Per-step comparison of sample mean |S_k| against the bracket
//   v (1 - (k-1)(2^d - 1) v / (|C| - sum_{j<k} |S_j|)) <= E|S_k| <= v.
// The lower bound ignores wall truncation, so by default only steps whose
// selected center is at least r from every wall enter the sample.
struct VolumeBoundsOptions {
  bool interior_only = true;
  double se_slack = 3.0;
  double cell_factor = 1.0 / 64.0;  // raster cell the areas were recorded on
  std::size_t max_steps = static_cast<std::size_t>(-1);
};
struct VolumeBoundsRow {
  std::int64_t k = 0;
  std::int64_t samples = 0;
  double mean_area = 0.0;
  double se = 0.0;
  double lower_bound_mean = 0.0;
  double upper_bound = 0.0;
  bool vacuous = false;  // bound nonpositive or too few samples to test
  bool lower_ok = true;
  bool upper_ok = true;
};
struct VolumeBoundsReport {
  std::vector<VolumeBoundsRow> rows;
  bool all_ok = true;
};
VolumeBoundsReport check_volume_bounds(const std::vector<RsaRun>& runs, const BoxGeometry& geom,
                                       const VolumeBoundsOptions& options = {});

}  // namespace jamsim
