#include "jamsim/rsa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace jamsim {
namespace {

// Swap-remove pool over the not-yet-explored points; the pick draw matches
// explore_graph so that a run over the geometric graph of the same cloud
// consumes the selection stream identically.
class Pool {
 public:
  explicit Pool(std::int64_t n) : items_(static_cast<std::size_t>(n)), pos_(static_cast<std::size_t>(n)) {
    std::iota(items_.begin(), items_.end(), 0);
    std::iota(pos_.begin(), pos_.end(), 0);
  }
  std::int32_t pick(Rng& rng) const {
    return items_[std::uniform_int_distribution<std::size_t>(0, items_.size() - 1)(rng)];
  }
  void remove(std::int32_t v) {
    const std::int32_t slot = pos_[static_cast<std::size_t>(v)];
    const std::int32_t last = items_.back();
    items_[static_cast<std::size_t>(slot)] = last;
    pos_[static_cast<std::size_t>(last)] = slot;
    items_.pop_back();
  }

 private:
  std::vector<std::int32_t> items_;
  std::vector<std::int32_t> pos_;
};

RsaRun make_run(std::int64_t n) {
  RsaRun run;
  run.trajectory.n_total = n;
  run.trajectory.z.push_back(0);
  return run;
}

CoupledRun run_engine(const PointCloud& cloud, const BoxGeometry& geom, Rng& selection,
                      Rng* upper_aux, Rng* lower_aux, const RsaOptions& opt) {
  validate(geom);
  const std::int64_t n = cloud.size();
  if (n < 1) throw std::invalid_argument("run_rsa: point cloud must contain at least one point");
  if (cloud.dimension != geom.dimension)
    throw std::invalid_argument("run_rsa: cloud and geometry dimensions differ");
  const bool with_u = opt.with_upper;
  const bool with_l = opt.with_lower;
  if (with_u && upper_aux == nullptr) throw std::logic_error("run_engine: missing upper stream");
  if (with_l && lower_aux == nullptr) throw std::logic_error("run_engine: missing lower stream");

  const double r = geom.radius;
  const double v = geom.ball_measure();
  const double box = geom.box_measure();
  const double factor = geom.dimension == 1 ? 1.0 : 3.0;  // 2^d - 1
  const double area_tol = opt.area_tol_factor * v;

  PointGrid grid(cloud, geom, r);
  ExploredRegion region_z(geom, opt.cell_factor * r);
  std::vector<ExploredRegion> region_u;
  if (with_u) region_u.emplace_back(geom, opt.cell_factor * r);

  CoupledRun out;
  out.z = make_run(n);
  if (with_u) out.upper = make_run(n);
  if (with_l) out.lower = make_run(n);

  Pool z_pool(n);
  Pool u_pool(with_u ? n : 0);
  Pool l_pool(with_l ? n : 0);
  std::vector<char> z_explored(static_cast<std::size_t>(n), 0);
  std::vector<char> u_explored(with_u ? static_cast<std::size_t>(n) : 0, 0);
  std::vector<char> l_explored(with_l ? static_cast<std::size_t>(n) : 0, 0);
  std::int64_t zcur = 0, ucur = 0, lcur = 0;
  double sum_z_areas = 0.0, sum_l_areas = 0.0;
  bool z_done = false, u_done = !with_u, l_done = !with_l;

  std::vector<std::int32_t> hits, newly;
  std::int64_t step = 0;
  while (!z_done || !l_done) {
    ++step;
    const bool z_active = !z_done;
    // After Z absorbs only the lower process is left; its continuation picks
    // come from the auxiliary stream so the Z path never depends on them.
    const std::int32_t x = z_active ? z_pool.pick(selection) : l_pool.pick(*lower_aux);
    const Vec2 xp = cloud.points[static_cast<std::size_t>(x)];

    // alpha_n uses areas of steps j < n, so freeze the sum before this step.
    const double alpha_basis =
        opt.alpha_source == RsaOptions::AlphaSource::ZAreas ? sum_z_areas : sum_l_areas;

    if (z_active) {
      z_pool.remove(x);
      z_explored[static_cast<std::size_t>(x)] = 1;
      hits.clear();
      grid.append_within(xp, r, hits);
      newly.clear();
      for (std::int32_t p : hits)
        if (!z_explored[static_cast<std::size_t>(p)]) newly.push_back(p);
      std::sort(newly.begin(), newly.end());
      for (std::int32_t p : newly) {
        z_explored[static_cast<std::size_t>(p)] = 1;
        z_pool.remove(p);
      }
      const double area = region_z.add_ball(xp, r);
      sum_z_areas += area;
      zcur += 1 + static_cast<std::int64_t>(newly.size());
      out.z.trajectory.z.push_back(zcur);
      out.z.step_areas.push_back(area);
      out.z.selection_order.push_back(x);
      out.z.selection_positions.push_back(xp);
      z_done = (zcur == n);
    }

    if (with_u && !u_done) {
      if (!z_active) throw std::logic_error("run_engine: upper process outlived Z");
      // Activation transfers to a uniform U-unexplored point when x is already
      // explored for U; the inflated ball stays centered at x either way.
      std::int32_t act = x;
      if (u_explored[static_cast<std::size_t>(x)]) act = u_pool.pick(*upper_aux);
      const RadiusSearch search = region_u.front().find_radius_for_area(xp, v, r, area_tol);
      const double r_t = std::max(search.radius, r);
      newly.clear();
      if (!u_explored[static_cast<std::size_t>(act)]) {
        u_explored[static_cast<std::size_t>(act)] = 1;
        newly.push_back(act);
      }
      hits.clear();
      grid.append_within(xp, r_t, hits);
      for (std::int32_t p : hits) {
        if (!u_explored[static_cast<std::size_t>(p)]) {
          u_explored[static_cast<std::size_t>(p)] = 1;
          newly.push_back(p);
        }
      }
      std::sort(newly.begin(), newly.end());
      for (std::int32_t p : newly) u_pool.remove(p);
      const double area = region_u.front().add_ball(xp, r_t);
      ucur += static_cast<std::int64_t>(newly.size());
      out.upper->trajectory.z.push_back(ucur);
      out.upper->step_areas.push_back(area);
      out.upper->selection_order.push_back(act);
      out.upper->selection_positions.push_back(xp);
      out.r_tilde.push_back(r_t);
      out.saturated.push_back(search.saturated ? 1 : 0);
      if (ucur < zcur) throw std::logic_error("run_engine: upper process fell below Z");
      u_done = (ucur == n);
    }

    if (with_l && !l_done) {
      double alpha = 0.0;
      const double denom = box - alpha_basis;
      if (denom > 0.0)
        alpha = std::clamp(1.0 - factor * static_cast<double>(step - 1) * v / denom, 0.0, 1.0);
      const double coin = std::uniform_real_distribution<double>(0.0, 1.0)(*lower_aux);
      if (l_explored[static_cast<std::size_t>(x)])
        throw std::logic_error("run_engine: lower process selected an explored point");
      l_pool.remove(x);
      l_explored[static_cast<std::size_t>(x)] = 1;
      newly.clear();
      double area = 0.0;
      if (coin < alpha) {
        hits.clear();
        grid.append_within(xp, r, hits);
        for (std::int32_t p : hits)
          if (!l_explored[static_cast<std::size_t>(p)]) newly.push_back(p);
        std::sort(newly.begin(), newly.end());
        for (std::int32_t p : newly) {
          l_explored[static_cast<std::size_t>(p)] = 1;
          l_pool.remove(p);
        }
        area = v;  // accepted steps count a full fresh ball by construction
      }
      lcur += 1 + static_cast<std::int64_t>(newly.size());
      sum_l_areas += area;
      out.lower->trajectory.z.push_back(lcur);
      out.lower->step_areas.push_back(area);
      out.lower->selection_order.push_back(x);
      out.lower->selection_positions.push_back(xp);
      out.alpha.push_back(alpha);
      if (z_active && lcur > zcur) throw std::logic_error("run_engine: lower process exceeded Z");
      l_done = (lcur == n);
    }
  }

  out.z.explored_measure = region_z.explored_measure();
  if (with_u) out.upper->explored_measure = region_u.front().explored_measure();
  if (with_l) out.lower->explored_measure = sum_l_areas;
  if (with_u && out.upper->trajectory.hitting_time() > out.z.trajectory.hitting_time())
    throw std::logic_error("run_engine: hitting times out of order (upper)");
  if (with_l && out.lower->trajectory.hitting_time() < out.z.trajectory.hitting_time())
    throw std::logic_error("run_engine: hitting times out of order (lower)");
  if (opt.keep_region) {
    out.z.region = std::move(region_z);
    if (with_u) out.upper->region = std::move(region_u.front());
  }
  return out;
}

}  // namespace

RsaStreams make_rsa_streams(std::uint64_t base_seed, std::uint64_t replicate) {
  // Substream 1 is reserved for sampling the point cloud itself.
  return RsaStreams{make_rng(base_seed, replicate, 0), make_rng(base_seed, replicate, 2),
                    make_rng(base_seed, replicate, 3)};
}

RsaRun run_rsa(const PointCloud& cloud, const BoxGeometry& geom, Rng& selection,
               const RsaOptions& options) {
  RsaOptions opt = options;
  opt.with_upper = false;
  opt.with_lower = false;
  CoupledRun run = run_engine(cloud, geom, selection, nullptr, nullptr, opt);
  return std::move(run.z);
}

CoupledRun run_coupled(const PointCloud& cloud, const BoxGeometry& geom, RsaStreams& streams,
                       const RsaOptions& options) {
  return run_engine(cloud, geom, streams.selection, &streams.upper_aux, &streams.lower_aux,
                    options);
}

CoupledRun run_coupled_upper(const PointCloud& cloud, const BoxGeometry& geom, RsaStreams& streams,
                             RsaOptions options) {
  options.with_upper = true;
  options.with_lower = false;
  return run_coupled(cloud, geom, streams, options);
}

CoupledRun run_coupled_lower(const PointCloud& cloud, const BoxGeometry& geom, RsaStreams& streams,
                             RsaOptions options) {
  options.with_upper = false;
  options.with_lower = true;
  return run_coupled(cloud, geom, streams, options);
}

namespace {

// Interpolate a clamped curve; values are exactly 1 from t_hit on.
double interp_curve(const std::vector<double>& grid, const std::vector<double>& values, double t,
                    double t_hit) {
  if (t < 0.0) throw std::invalid_argument("BoundCurves: t must be nonnegative");
  if (t >= t_hit) return 1.0;
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  if (it == grid.begin()) return values.front();
  if (it == grid.end()) return values.back();
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - grid[lo]) / (grid[hi] - grid[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

struct CurvePath {
  std::vector<std::array<double, 2>> states;  // state at t = i h, first component < 1
  double t_hit = 0.0;
};

template <class F>
CurvePath integrate_until_one(F&& f, std::array<double, 2> s0, const OdeSettings& settings) {
  const double h = settings.step;
  CurvePath path;
  path.states.push_back(s0);
  std::array<double, 2> s = s0;
  for (std::size_t i = 0;; ++i) {
    const double ti = h * static_cast<double>(i);
    if (ti > settings.max_time)
      throw std::runtime_error("integrate_bounds: curve failed to reach 1 before max_time");
    const std::array<double, 2> next = detail::rk4_step(f, ti, s, h);
    if (next[0] >= 1.0) {
      const auto crossing = detail::refine_crossing(f, ti, s, h, 0, 1.0, settings.root_tolerance);
      path.t_hit = ti + crossing.first;
      break;
    }
    s = next;
    s[1] = std::clamp(s[1], 0.0, 1.0);  // keep the auxiliary component in range
    path.states.push_back(s);
  }
  return path;
}

}  // namespace

double BoundCurves::u_at(double t) const { return interp_curve(grid, u_values, t, t_lower); }
double BoundCurves::l_at(double t) const { return interp_curve(grid, l_values, t, t_upper); }

BoundCurves integrate_bounds(double c, const OdeSettings& settings) {
  if (!(c > 0.0)) throw std::invalid_argument("integrate_bounds: c must be positive");
  if (!(settings.step > 0.0)) throw std::invalid_argument("integrate_bounds: step must be positive");
  const double eps = 1e-12;  // denominator floor as the curves approach 1

  auto f_upper = [c, eps](double, const std::array<double, 2>& s) {
    const double den = std::max(1.0 - s[0], eps);
    const double y = std::clamp(s[1], 0.0, 1.0);
    return std::array<double, 2>{1.0 + c * y, -y / den};
  };
  // The max{0, .} clamp defuses the stiff tail once 3 c t w2 outgrows 1 - w1;
  // past that point the slope is exactly 1.
  auto f_lower = [c, eps](double t, const std::array<double, 2>& s) {
    const double den = std::max(1.0 - s[0], eps);
    const double w2 = std::clamp(s[1], 0.0, 1.0);
    const double rate = c * (1.0 - 3.0 * c * t * w2 / den) * w2;
    return std::array<double, 2>{1.0 + std::max(0.0, rate), -w2 / den};
  };

  const CurvePath up = integrate_until_one(f_upper, {0.0, 1.0}, settings);
  const CurvePath low = integrate_until_one(f_lower, {0.0, 1.0}, settings);

  BoundCurves out;
  out.t_lower = up.t_hit;
  out.t_upper = low.t_hit;
  const std::size_t interior = std::max(up.states.size(), low.states.size());
  out.grid.resize(interior + 1);
  out.u_values.resize(interior + 1);
  out.l_values.resize(interior + 1);
  out.w2_values.resize(interior + 1);
  for (std::size_t i = 0; i < interior; ++i) {
    out.grid[i] = settings.step * static_cast<double>(i);
    out.u_values[i] = i < up.states.size() ? up.states[i][0] : 1.0;
    out.l_values[i] = i < low.states.size() ? low.states[i][0] : 1.0;
    out.w2_values[i] = i < low.states.size() ? low.states[i][1] : 0.0;
  }
  out.grid.back() = std::max(up.t_hit, low.t_hit);
  out.u_values.back() = 1.0;
  out.l_values.back() = 1.0;
  out.w2_values.back() = 0.0;
  return out;
}

double rsa_upper_closed_form(double c, double t) {
  if (!(c > 0.0)) throw std::invalid_argument("rsa_upper_closed_form: c must be positive");
  if (t < 0.0) throw std::invalid_argument("rsa_upper_closed_form: t must be nonnegative");
  const double ct = c * t;
  if (ct >= 1.0) return 1.0;
  const double value = ct + (t - 1.0 / c) * std::log1p(-ct);
  return std::min(value, 1.0);
}

VolumeBoundsReport check_volume_bounds(const std::vector<RsaRun>& runs, const BoxGeometry& geom,
                                       const VolumeBoundsOptions& options) {
  validate(geom);
  if (runs.empty()) throw std::invalid_argument("check_volume_bounds: need at least one run");
  const double r = geom.radius;
  const double v = geom.ball_measure();
  const double box = geom.box_measure();
  const double factor = geom.dimension == 1 ? 1.0 : 3.0;
  // Recorded areas live on the raster: cells whose center falls in B(x, r) sit
  // inside B(x, r + half cell diagonal), a deterministic cap.
  double upper_cap = v;
  if (geom.dimension == 2) {
    const double half_diag = 0.5 * options.cell_factor * r * std::sqrt(2.0);
    upper_cap = v * (1.0 + half_diag / r) * (1.0 + half_diag / r);
  } else {
    upper_cap = v * (1.0 + 1e-12);
  }

  std::size_t kmax = 0;
  std::vector<std::vector<double>> prefix(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& areas = runs[i].step_areas;
    if (areas.size() != runs[i].selection_positions.size())
      throw std::invalid_argument("check_volume_bounds: runs must carry per-step areas and centers");
    kmax = std::max(kmax, areas.size());
    prefix[i].resize(areas.size() + 1, 0.0);
    std::partial_sum(areas.begin(), areas.end(), prefix[i].begin() + 1);
  }
  kmax = std::min(kmax, options.max_steps);

  auto interior = [&](Vec2 p) {
    if (!options.interior_only) return true;
    if (p.x < r || p.x > geom.side[0] - r) return false;
    if (geom.dimension == 2 && (p.y < r || p.y > geom.side[1] - r)) return false;
    return true;
  };

  VolumeBoundsReport report;
  for (std::size_t k = 1; k <= kmax; ++k) {
    VolumeBoundsRow row;
    row.k = static_cast<std::int64_t>(k);
    row.upper_bound = upper_cap;
    double sum = 0.0, sum_sq = 0.0, bound_sum = 0.0;
    std::int64_t m = 0;
    bool upper_ok = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].step_areas.size() < k) continue;
      if (!interior(runs[i].selection_positions[k - 1])) continue;
      const double area = runs[i].step_areas[k - 1];
      const double denom = box - prefix[i][k - 1];
      double bound = 0.0;
      if (denom > 0.0)
        bound = std::max(0.0, v * (1.0 - factor * static_cast<double>(k - 1) * v / denom));
      sum += area;
      sum_sq += area * area;
      bound_sum += bound;
      upper_ok = upper_ok && area <= upper_cap;
      ++m;
    }
    row.samples = m;
    if (m >= 2) {
      row.mean_area = sum / static_cast<double>(m);
      const double var =
          std::max(0.0, (sum_sq - sum * sum / static_cast<double>(m)) / static_cast<double>(m - 1));
      row.se = std::sqrt(var / static_cast<double>(m));
      row.lower_bound_mean = bound_sum / static_cast<double>(m);
      row.vacuous = row.lower_bound_mean <= 0.0;
      row.lower_ok =
          row.vacuous || row.mean_area >= row.lower_bound_mean - options.se_slack * row.se;
      row.upper_ok = upper_ok;
    } else {
      row.vacuous = true;  // not enough interior samples at this depth
      row.lower_ok = true;
      row.upper_ok = upper_ok;
      if (m == 1) row.mean_area = sum;
    }
    report.all_ok = report.all_ok && row.lower_ok && row.upper_ok;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace jamsim
