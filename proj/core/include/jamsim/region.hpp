#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jamsim/random_graphs.hpp"

namespace jamsim {

// Explored subset of the segment [0, length], kept as sorted disjoint
// intervals. All measures are exact up to floating-point rounding.
class IntervalRegion {
 public:
  explicit IntervalRegion(double length);

  double box_measure() const { return length_; }
  double explored_measure() const;
  // Measure of B(center, radius) ∩ box ∩ complement(explored).
  double free_measure(double center, double radius) const;
  // Adds B(center, radius) ∩ box to the region; returns the newly covered measure.
  double add_ball(double center, double radius);
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }

 private:
  double length_;
  std::vector<std::pair<double, double>> intervals_;
};

// Explored subset of the box, rasterized on a grid of cells sized ~cell_hint
// (adjusted per axis so cells tile the box exactly). A cell belongs to a ball
// iff its center does, so recorded areas carry an O(perimeter * cell) error.
class RasterRegion {
 public:
  RasterRegion(double width, double height, double cell_hint);

  double box_measure() const { return width_ * height_; }
  double cell_measure() const { return cw_ * ch_; }
  double explored_measure() const { return static_cast<double>(explored_cells_) * cell_measure(); }
  double free_measure(Vec2 center, double radius) const;
  double add_ball(Vec2 center, double radius);
  // Squared center distances of free cells within radius_cap, for radius search.
  void collect_free_dist2(Vec2 center, double radius_cap, std::vector<double>& out) const;
  std::int64_t free_cells() const { return static_cast<std::int64_t>(mask_.size()) - explored_cells_; }

 private:
  template <class Fn>
  void scan_ball(Vec2 center, double radius, Fn&& fn) const;

  double width_, height_, cw_, ch_;
  int nx_, ny_;
  std::vector<bool> mask_;
  std::int64_t explored_cells_ = 0;
};

struct RadiusSearch {
  double radius = 0.0;
  double free_measure = 0.0;  // free measure within the returned radius
  bool saturated = false;     // no radius up to the box diagonal reaches the target
};

// Dimension-dispatching facade used by the adsorption processes.
class ExploredRegion {
 public:
  ExploredRegion(const BoxGeometry& geom, double cell_hint);

  int dimension() const { return dimension_; }
  double box_measure() const;
  double explored_measure() const;
  double cell_measure() const;  // 0 in the exact d=1 representation
  double free_ball_measure(Vec2 center, double radius) const;
  double add_ball(Vec2 center, double radius);
  // Smallest radius >= r_min whose free measure reaches target_area (within
  // area_tol); saturates at the box diagonal when unreachable.
  RadiusSearch find_radius_for_area(Vec2 center, double target_area, double r_min,
                                    double area_tol) const;
  const IntervalRegion& interval() const;
  const RasterRegion& raster() const;

 private:
  int dimension_;
  double diagonal_;
  std::vector<IntervalRegion> interval_;  // used when dimension == 1
  std::vector<RasterRegion> raster_;      // used when dimension == 2
};

// Free measure the next step would cover from `center` with `radius`; rejects
// nonpositive radii.
double step_area(const ExploredRegion& region, Vec2 center, double radius);

}  // namespace jamsim
