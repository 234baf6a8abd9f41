#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "jamsim/rng.hpp"

namespace jamsim {

// Erdos-Renyi parameters; edge probability is c/n.
struct ErParams {
  std::int64_t n = 1;
  double c = 1.0;
};

// Throws std::invalid_argument unless n >= 1 and 0 <= c <= n (so the edge
// probability stays in [0, 1]). c = 0 is the degenerate edgeless case.
void validate(const ErParams& params);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned box [0, side[0]] x [0, side[1]] with hard walls (no wraparound).
// For dimension 1 only side[0] is used and points live on [0, side[0]].
struct BoxGeometry {
  int dimension = 2;
  std::array<double, 2> side = {1.0, 1.0};
  double intensity = 1.0;  // expected points per unit volume (lambda)
  double radius = 1.0;     // interaction radius r

  double box_measure() const;
  double ball_measure() const;  // 2r (d=1) or pi r^2 (d=2)
  double mean_degree() const { return intensity * ball_measure(); }  // c = lambda * v
  double diagonal() const;
};

// Throws std::invalid_argument unless dimension is 1 or 2, sides and radius and
// intensity are positive, and the ball measure is smaller than the box measure.
void validate(const BoxGeometry& geom);

// Convenience constructor used by experiments: square box sized so the expected
// point count is n, with r chosen to hit the requested mean degree c.
BoxGeometry box_for_mean_degree(double c, double lambda, std::int64_t n, int dimension = 2);

struct PointCloud {
  int dimension = 2;
  std::vector<Vec2> points;
  std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
};

enum class CountMode { FixedCount, PoissonCount };

// Uniform points in the box; FixedCount places round(lambda * |C|) points,
// PoissonCount draws the count from Poisson(lambda * |C|).
PointCloud sample_point_cloud(const BoxGeometry& geom, CountMode mode, Rng& rng);

// Undirected simple graph stored as sorted adjacency lists.
struct AdjacencyGraph {
  std::vector<std::vector<std::int32_t>> neighbors;
  std::int64_t vertex_count() const { return static_cast<std::int64_t>(neighbors.size()); }
  std::int64_t edge_count() const;
};

// G(n, c/n) sampler using per-row geometric skips; exact and O(n + edges).
AdjacencyGraph sample_er_graph(const ErParams& params, Rng& rng);

enum class NeighborMethod { GridIndex, BruteForce };

// Random geometric graph on the cloud: vertices i, j adjacent iff
// dist(x_i, x_j) <= r (closed ball). GridIndex and BruteForce must agree exactly.
AdjacencyGraph build_rgg(const PointCloud& cloud, const BoxGeometry& geom,
                         NeighborMethod method = NeighborMethod::GridIndex);

// Uniform bucket grid over the box for fixed-radius neighbor queries. Cell size
// equals the query radius hint; queries with larger radii scan a wider ring.
class PointGrid {
 public:
  PointGrid(const PointCloud& cloud, const BoxGeometry& geom, double cell_size);

  // Appends indices of points with dist(point, center) <= radius (includes the
  // center point itself if it is in the cloud).
  void append_within(Vec2 center, double radius, std::vector<std::int32_t>& out) const;

 private:
  const std::vector<Vec2>* points_;
  int nx_ = 1, ny_ = 1;
  double cell_ = 1.0;
  std::vector<std::vector<std::int32_t>> buckets_;
};

}  // namespace jamsim
