#include "jamsim/random_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jamsim {

void validate(const ErParams& params) {
  if (params.n < 1) throw std::invalid_argument("ErParams: n must be at least 1");
  if (!(params.c >= 0.0) || params.c > static_cast<double>(params.n))
    throw std::invalid_argument("ErParams: need 0 <= c <= n so the edge probability c/n is in [0, 1]");
}

double BoxGeometry::box_measure() const {
  return dimension == 1 ? side[0] : side[0] * side[1];
}

double BoxGeometry::ball_measure() const {
  return dimension == 1 ? 2.0 * radius : std::numbers::pi * radius * radius;
}

double BoxGeometry::diagonal() const {
  return dimension == 1 ? side[0] : std::hypot(side[0], side[1]);
}

void validate(const BoxGeometry& geom) {
  if (geom.dimension != 1 && geom.dimension != 2)
    throw std::invalid_argument("BoxGeometry: dimension must be 1 or 2");
  if (!(geom.side[0] > 0.0) || (geom.dimension == 2 && !(geom.side[1] > 0.0)))
    throw std::invalid_argument("BoxGeometry: box sides must be positive");
  if (!(geom.radius > 0.0)) throw std::invalid_argument("BoxGeometry: radius must be positive");
  if (!(geom.intensity > 0.0)) throw std::invalid_argument("BoxGeometry: intensity must be positive");
  if (!(geom.ball_measure() < geom.box_measure()))
    throw std::invalid_argument("BoxGeometry: ball measure must be smaller than the box measure");
}

BoxGeometry box_for_mean_degree(double c, double lambda, std::int64_t n, int dimension) {
  if (!(c > 0.0) || !(lambda > 0.0) || n < 1)
    throw std::invalid_argument("box_for_mean_degree: need c > 0, lambda > 0, n >= 1");
  BoxGeometry geom;
  geom.dimension = dimension;
  geom.intensity = lambda;
  const double volume = static_cast<double>(n) / lambda;
  if (dimension == 1) {
    geom.side = {volume, 0.0};
    geom.radius = c / (2.0 * lambda);
  } else {
    const double side = std::sqrt(volume);
    geom.side = {side, side};
    geom.radius = std::sqrt(c / (lambda * std::numbers::pi));
  }
  validate(geom);
  return geom;
}

PointCloud sample_point_cloud(const BoxGeometry& geom, CountMode mode, Rng& rng) {
  validate(geom);
  const double mean = geom.intensity * geom.box_measure();
  std::int64_t count = 0;
  if (mode == CountMode::FixedCount) {
    count = std::llround(mean);
  } else {
    count = std::poisson_distribution<std::int64_t>(mean)(rng);
  }
  PointCloud cloud;
  cloud.dimension = geom.dimension;
  cloud.points.reserve(static_cast<std::size_t>(count));
  std::uniform_real_distribution<double> ux(0.0, geom.side[0]);
  std::uniform_real_distribution<double> uy(0.0, geom.dimension == 2 ? geom.side[1] : 1.0);
  for (std::int64_t i = 0; i < count; ++i) {
    Vec2 p;
    p.x = ux(rng);
    p.y = geom.dimension == 2 ? uy(rng) : 0.0;
    cloud.points.push_back(p);
  }
  return cloud;
}

std::int64_t AdjacencyGraph::edge_count() const {
  std::int64_t total = 0;
  for (const auto& list : neighbors) total += static_cast<std::int64_t>(list.size());
  return total / 2;
}

AdjacencyGraph sample_er_graph(const ErParams& params, Rng& rng) {
  validate(params);
  const auto n = params.n;
  const double p = params.c / static_cast<double>(n);
  AdjacencyGraph g;
  g.neighbors.resize(static_cast<std::size_t>(n));
  if (n < 2 || p <= 0.0) return g;

  if (p >= 1.0) {
    for (std::int32_t i = 0; i < n; ++i)
      for (std::int32_t j = 0; j < n; ++j)
        if (j != i) g.neighbors[static_cast<std::size_t>(i)].push_back(j);
    return g;
  }

  // Skip-based row sampling: within row i the gaps between present edges
  // (i, j < i) are geometric, so runtime is O(n + edges). Row order plus the
  // ascending appends below leave every adjacency list sorted.
  std::geometric_distribution<std::int64_t> skip(p);
  for (std::int64_t i = 1; i < n; ++i) {
    std::int64_t j = skip(rng);
    while (j < i) {
      g.neighbors[static_cast<std::size_t>(i)].push_back(static_cast<std::int32_t>(j));
      g.neighbors[static_cast<std::size_t>(j)].push_back(static_cast<std::int32_t>(i));
      j += 1 + skip(rng);
    }
  }
  return g;
}

namespace {

inline double dist2(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

AdjacencyGraph rgg_brute(const PointCloud& cloud, double r) {
  const auto n = cloud.size();
  AdjacencyGraph g;
  g.neighbors.resize(static_cast<std::size_t>(n));
  const double r2 = r * r;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      if (dist2(cloud.points[static_cast<std::size_t>(i)],
                cloud.points[static_cast<std::size_t>(j)]) <= r2) {
        g.neighbors[static_cast<std::size_t>(i)].push_back(static_cast<std::int32_t>(j));
        g.neighbors[static_cast<std::size_t>(j)].push_back(static_cast<std::int32_t>(i));
      }
  return g;
}

}  // namespace

PointGrid::PointGrid(const PointCloud& cloud, const BoxGeometry& geom, double cell_size)
    : points_(&cloud.points) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("PointGrid: cell size must be positive");
  cell_ = cell_size;
  nx_ = std::max(1, static_cast<int>(std::ceil(geom.side[0] / cell_)));
  ny_ = geom.dimension == 2 ? std::max(1, static_cast<int>(std::ceil(geom.side[1] / cell_))) : 1;
  buckets_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), {});
  for (std::size_t i = 0; i < points_->size(); ++i) {
    const Vec2 p = (*points_)[i];
    int ix = std::min(nx_ - 1, std::max(0, static_cast<int>(p.x / cell_)));
    int iy = std::min(ny_ - 1, std::max(0, static_cast<int>(p.y / cell_)));
    buckets_[static_cast<std::size_t>(iy) * nx_ + ix].push_back(static_cast<std::int32_t>(i));
  }
}

void PointGrid::append_within(Vec2 center, double radius, std::vector<std::int32_t>& out) const {
  const double r2 = radius * radius;
  const int span = static_cast<int>(std::ceil(radius / cell_));
  const int cx = std::min(nx_ - 1, std::max(0, static_cast<int>(center.x / cell_)));
  const int cy = std::min(ny_ - 1, std::max(0, static_cast<int>(center.y / cell_)));
  for (int iy = std::max(0, cy - span); iy <= std::min(ny_ - 1, cy + span); ++iy)
    for (int ix = std::max(0, cx - span); ix <= std::min(nx_ - 1, cx + span); ++ix)
      for (std::int32_t idx : buckets_[static_cast<std::size_t>(iy) * nx_ + ix])
        if (dist2((*points_)[static_cast<std::size_t>(idx)], center) <= r2) out.push_back(idx);
}

AdjacencyGraph build_rgg(const PointCloud& cloud, const BoxGeometry& geom, NeighborMethod method) {
  if (cloud.dimension != geom.dimension)
    throw std::invalid_argument("build_rgg: cloud and geometry dimension mismatch");
  if (!(geom.radius > 0.0)) throw std::invalid_argument("build_rgg: radius must be positive");
  if (method == NeighborMethod::BruteForce) {
    AdjacencyGraph g = rgg_brute(cloud, geom.radius);
    for (auto& list : g.neighbors) std::sort(list.begin(), list.end());
    return g;
  }

  const auto n = cloud.size();
  AdjacencyGraph g;
  g.neighbors.resize(static_cast<std::size_t>(n));
  PointGrid grid(cloud, geom, geom.radius);
  std::vector<std::int32_t> hits;
  for (std::int64_t i = 0; i < n; ++i) {
    hits.clear();
    grid.append_within(cloud.points[static_cast<std::size_t>(i)], geom.radius, hits);
    for (std::int32_t j : hits)
      if (j != i) g.neighbors[static_cast<std::size_t>(i)].push_back(j);
    std::sort(g.neighbors[static_cast<std::size_t>(i)].begin(),
              g.neighbors[static_cast<std::size_t>(i)].end());
  }
  return g;
}

}  // namespace jamsim
