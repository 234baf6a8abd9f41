#include "jamsim/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jamsim {

IntervalRegion::IntervalRegion(double length) : length_(length) {
  if (!(length > 0.0)) throw std::invalid_argument("IntervalRegion: length must be positive");
}

double IntervalRegion::explored_measure() const {
  double total = 0.0;
  for (const auto& [a, b] : intervals_) total += b - a;
  return total;
}

double IntervalRegion::free_measure(double center, double radius) const {
  if (!(radius > 0.0)) throw std::invalid_argument("IntervalRegion: radius must be positive");
  const double lo = std::max(0.0, center - radius);
  const double hi = std::min(length_, center + radius);
  if (hi <= lo) return 0.0;
  double covered = 0.0;
  for (const auto& [a, b] : intervals_) {
    if (b <= lo) continue;
    if (a >= hi) break;
    covered += std::min(b, hi) - std::max(a, lo);
  }
  return (hi - lo) - covered;
}

double IntervalRegion::add_ball(double center, double radius) {
  const double newly = free_measure(center, radius);
  const double lo = std::max(0.0, center - radius);
  const double hi = std::min(length_, center + radius);
  if (hi <= lo) return 0.0;
  // Merge [lo, hi] into the sorted disjoint list.
  std::vector<std::pair<double, double>> merged;
  merged.reserve(intervals_.size() + 1);
  double a = lo, b = hi;
  bool inserted = false;
  for (const auto& iv : intervals_) {
    if (iv.second < a) {
      merged.push_back(iv);
    } else if (iv.first > b) {
      if (!inserted) {
        merged.emplace_back(a, b);
        inserted = true;
      }
      merged.push_back(iv);
    } else {
      a = std::min(a, iv.first);
      b = std::max(b, iv.second);
    }
  }
  if (!inserted) merged.emplace_back(a, b);
  intervals_ = std::move(merged);
  return newly;
}

RasterRegion::RasterRegion(double width, double height, double cell_hint)
    : width_(width), height_(height) {
  if (!(width > 0.0) || !(height > 0.0))
    throw std::invalid_argument("RasterRegion: box sides must be positive");
  if (!(cell_hint > 0.0)) throw std::invalid_argument("RasterRegion: cell hint must be positive");
  nx_ = std::max(1, static_cast<int>(std::ceil(width / cell_hint)));
  ny_ = std::max(1, static_cast<int>(std::ceil(height / cell_hint)));
  cw_ = width / nx_;
  ch_ = height / ny_;
  mask_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), false);
}

template <class Fn>
void RasterRegion::scan_ball(Vec2 center, double radius, Fn&& fn) const {
  const double r2 = radius * radius;
  const int jy_lo = std::max(0, static_cast<int>(std::floor((center.y - radius) / ch_)));
  const int jy_hi = std::min(ny_ - 1, static_cast<int>(std::floor((center.y + radius) / ch_)));
  for (int jy = jy_lo; jy <= jy_hi; ++jy) {
    const double dy = (jy + 0.5) * ch_ - center.y;
    const double rem = r2 - dy * dy;
    if (rem < 0.0) continue;
    const double half = std::sqrt(rem);
    // Widen by one cell, then test centers exactly; keeps all paths consistent.
    int ix_lo = std::max(0, static_cast<int>(std::floor((center.x - half) / cw_)) - 1);
    int ix_hi = std::min(nx_ - 1, static_cast<int>(std::floor((center.x + half) / cw_)) + 1);
    const std::size_t row = static_cast<std::size_t>(jy) * static_cast<std::size_t>(nx_);
    for (int ix = ix_lo; ix <= ix_hi; ++ix) {
      const double dx = (ix + 0.5) * cw_ - center.x;
      if (dx * dx + dy * dy <= r2) fn(row + static_cast<std::size_t>(ix), dx * dx + dy * dy);
    }
  }
}

double RasterRegion::free_measure(Vec2 center, double radius) const {
  if (!(radius > 0.0)) throw std::invalid_argument("RasterRegion: radius must be positive");
  std::int64_t count = 0;
  scan_ball(center, radius, [&](std::size_t idx, double) {
    if (!mask_[idx]) ++count;
  });
  return static_cast<double>(count) * cell_measure();
}

double RasterRegion::add_ball(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("RasterRegion: radius must be positive");
  std::int64_t newly = 0;
  scan_ball(center, radius, [&](std::size_t idx, double) {
    if (!mask_[idx]) {
      mask_[idx] = true;
      ++newly;
    }
  });
  explored_cells_ += newly;
  return static_cast<double>(newly) * cell_measure();
}

void RasterRegion::collect_free_dist2(Vec2 center, double radius_cap,
                                      std::vector<double>& out) const {
  scan_ball(center, radius_cap, [&](std::size_t idx, double d2) {
    if (!mask_[idx]) out.push_back(d2);
  });
}

ExploredRegion::ExploredRegion(const BoxGeometry& geom, double cell_hint)
    : dimension_(geom.dimension), diagonal_(geom.diagonal()) {
  validate(geom);
  if (dimension_ == 1) {
    interval_.emplace_back(geom.side[0]);
  } else {
    raster_.emplace_back(geom.side[0], geom.side[1], cell_hint);
  }
}

double ExploredRegion::box_measure() const {
  return dimension_ == 1 ? interval_[0].box_measure() : raster_[0].box_measure();
}

double ExploredRegion::explored_measure() const {
  return dimension_ == 1 ? interval_[0].explored_measure() : raster_[0].explored_measure();
}

double ExploredRegion::cell_measure() const {
  return dimension_ == 1 ? 0.0 : raster_[0].cell_measure();
}

double ExploredRegion::free_ball_measure(Vec2 center, double radius) const {
  return dimension_ == 1 ? interval_[0].free_measure(center.x, radius)
                         : raster_[0].free_measure(center, radius);
}

double ExploredRegion::add_ball(Vec2 center, double radius) {
  return dimension_ == 1 ? interval_[0].add_ball(center.x, radius)
                         : raster_[0].add_ball(center, radius);
}

const IntervalRegion& ExploredRegion::interval() const {
  if (dimension_ != 1) throw std::logic_error("ExploredRegion: not a d=1 region");
  return interval_[0];
}

const RasterRegion& ExploredRegion::raster() const {
  if (dimension_ != 2) throw std::logic_error("ExploredRegion: not a d=2 region");
  return raster_[0];
}

RadiusSearch ExploredRegion::find_radius_for_area(Vec2 center, double target_area, double r_min,
                                                  double area_tol) const {
  if (!(target_area > 0.0) || !(r_min > 0.0))
    throw std::invalid_argument("find_radius_for_area: target and r_min must be positive");
  RadiusSearch out;
  const double r_max = diagonal_;

  if (dimension_ == 1) {
    // Free measure is continuous and nondecreasing in the radius: bisect.
    if (interval_[0].free_measure(center.x, r_max) < target_area - area_tol) {
      out.radius = r_max;
      out.free_measure = interval_[0].free_measure(center.x, r_max);
      out.saturated = true;
      return out;
    }
    double lo = r_min, hi = r_max;
    if (interval_[0].free_measure(center.x, lo) >= target_area) {
      out.radius = lo;
      out.free_measure = interval_[0].free_measure(center.x, lo);
      return out;
    }
    while (hi - lo > 1e-13 * r_max) {
      const double mid = 0.5 * (lo + hi);
      const double area = interval_[0].free_measure(center.x, mid);
      if (std::abs(area - target_area) <= area_tol) {
        out.radius = mid;
        out.free_measure = area;
        return out;
      }
      (area < target_area ? lo : hi) = mid;
    }
    out.radius = hi;
    out.free_measure = interval_[0].free_measure(center.x, hi);
    return out;
  }

  // d=2: the free measure within radius rho is (number of free cell centers
  // with distance <= rho) * cell area, a step function of rho. The k-th
  // smallest free distance with k = round(target / cell) therefore realizes
  // the target within half a cell, well inside the area tolerance.
  const double cell = raster_[0].cell_measure();
  const std::size_t k = static_cast<std::size_t>(std::max<std::int64_t>(
      1, std::llround(target_area / cell)));
  thread_local std::vector<double> dist2;
  double cap = std::max(2.0 * r_min, 1e-9);
  for (;;) {
    dist2.clear();
    const double effective_cap = std::min(cap, r_max);
    raster_[0].collect_free_dist2(center, effective_cap, dist2);
    if (dist2.size() >= k) break;
    if (effective_cap >= r_max) {
      out.radius = r_max;
      out.free_measure = static_cast<double>(dist2.size()) * cell;
      out.saturated = true;
      return out;
    }
    cap *= 1.6;
  }
  std::nth_element(dist2.begin(), dist2.begin() + static_cast<std::ptrdiff_t>(k - 1), dist2.end());
  out.radius = std::max(std::sqrt(dist2[k - 1]), r_min);
  out.free_measure = raster_[0].free_measure(center, out.radius);
  return out;
}

double step_area(const ExploredRegion& region, Vec2 center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("step_area: radius must be positive");
  return region.free_ball_measure(center, radius);
}

}  // namespace jamsim
