#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "jamsim/exploration.hpp"
#include "jamsim/random_graphs.hpp"
#include "jamsim/rng.hpp"
#include "jamsim/rsa.hpp"

using namespace jamsim;

namespace {

const double kPi = std::acos(-1.0);

BoxGeometry square_box(double side, double r) {
  BoxGeometry geom;
  geom.dimension = 2;
  geom.side = {side, side};
  geom.radius = r;
  geom.intensity = 1.0;
  return geom;
}

PointCloud cloud_of(std::vector<Vec2> points) {
  PointCloud cloud;
  cloud.dimension = 2;
  cloud.points = std::move(points);
  return cloud;
}

// 16 points on a unit-spaced grid, half a unit from every wall: pairwise
// distances exceed any radius below 1, and every disc of radius < 0.5 is
// interior.
PointCloud grid_cloud() {
  std::vector<Vec2> points;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      points.push_back({0.5 + static_cast<double>(i), 0.5 + static_cast<double>(j)});
  return cloud_of(std::move(points));
}

}  // namespace

TEST_CASE("a single interior point jams in one step with a full-disc footprint") {
  const BoxGeometry geom = square_box(2.0, 0.3);
  PointCloud cloud = cloud_of({{1.0, 1.0}});
  Rng selection = make_rng(3, 0, 0);
  RsaRun run = run_rsa(cloud, geom, selection);
  CHECK(run.trajectory.n_total == 1);
  CHECK(run.trajectory.z == std::vector<std::int64_t>{0, 1});
  CHECK(run.trajectory.hitting_time() == 1);
  REQUIRE(run.step_areas.size() == 1);
  const double collar = 2.0 * kPi * 0.3 * std::sqrt(2.0) * (0.3 / 64.0);
  CHECK(std::abs(run.step_areas[0] - kPi * 0.09) < collar);
  CHECK(run.selection_order == std::vector<std::int32_t>{0});
  CHECK(run.selection_positions[0].x == 1.0);
  CHECK(run.explored_measure == run.step_areas[0]);
  CHECK_FALSE(run.region.has_value());
}

TEST_CASE("a point near the corner records a wall-truncated footprint") {
  const BoxGeometry geom = square_box(2.0, 0.3);
  PointCloud cloud = cloud_of({{0.05, 0.05}});
  Rng selection = make_rng(3, 0, 0);
  RsaOptions options;
  options.keep_region = true;
  RsaRun run = run_rsa(cloud, geom, selection, options);
  CHECK(run.step_areas[0] > 0.05 * kPi * 0.09);
  CHECK(run.step_areas[0] < 0.75 * kPi * 0.09);
  REQUIRE(run.region.has_value());
  CHECK(run.region->explored_measure() == run.explored_measure);
}

TEST_CASE("two points within range jam together in one step") {
  const BoxGeometry geom = square_box(2.0, 0.3);
  PointCloud cloud = cloud_of({{1.0, 1.0}, {1.2, 1.0}});
  Rng selection = make_rng(3, 0, 0);
  RsaRun run = run_rsa(cloud, geom, selection);
  CHECK(run.trajectory.z == std::vector<std::int64_t>{0, 2});
  CHECK(run.trajectory.hitting_time() == 1);
}

TEST_CASE("pairwise-distant points jam one per step with full discs") {
  const BoxGeometry geom = square_box(4.0, 0.3);
  PointCloud cloud = grid_cloud();
  Rng selection = make_rng(9, 0, 0);
  RsaRun run = run_rsa(cloud, geom, selection);
  CHECK(run.trajectory.hitting_time() == 16);
  for (std::size_t i = 1; i < run.trajectory.z.size(); ++i)
    CHECK(run.trajectory.z[i] == run.trajectory.z[i - 1] + 1);
  const double collar = 2.0 * kPi * 0.3 * std::sqrt(2.0) * (0.3 / 64.0);
  double total = 0.0;
  for (double area : run.step_areas) {
    CHECK(std::abs(area - kPi * 0.09) < collar);
    total += area;
  }
  CHECK(run.explored_measure == doctest::Approx(total).epsilon(1e-12));
  std::vector<std::int32_t> order = run.selection_order;
  std::sort(order.begin(), order.end());
  std::vector<std::int32_t> expected(16);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(order == expected);
}

TEST_CASE("the adsorption run reproduces the geometric-graph exploration exactly") {
  const BoxGeometry geom = box_for_mean_degree(1.2, 1.0, 300, 2);
  Rng structure = make_rng(17, 1, 0);
  PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
  const AdjacencyGraph graph = build_rgg(cloud, geom);
  Rng sel_rsa = make_rng(17, 0, 0);
  Rng sel_graph = make_rng(17, 0, 0);
  RsaRun run = run_rsa(cloud, geom, sel_rsa);
  Trajectory reference = explore_graph(graph, sel_graph);
  CHECK(run.trajectory.n_total == reference.n_total);
  CHECK(run.trajectory.z == reference.z);
}

TEST_CASE("upper process equals Z on isolated points and dominates in general") {
  // Far-apart points: the inflated radius stays within the empty shell, so the
  // upper process cannot pick up extra vertices and tracks Z exactly.
  {
    const BoxGeometry geom = square_box(4.0, 0.3);
    PointCloud cloud = grid_cloud();
    RsaStreams streams = make_rsa_streams(9, 0);
    CoupledRun run = run_coupled_upper(cloud, geom, streams);
    REQUIRE(run.upper.has_value());
    CHECK(run.upper->trajectory.z == run.z.trajectory.z);
    REQUIRE(run.r_tilde.size() == static_cast<std::size_t>(run.upper->trajectory.hitting_time()));
    CHECK(run.r_tilde[0] >= 0.3);
    CHECK(run.r_tilde[0] <= 0.3 * 1.05);
    for (char s : run.saturated) CHECK(s == 0);
  }

  // Random clouds: domination step by step and in the hitting times.
  const BoxGeometry geom = box_for_mean_degree(1.4, 1.0, 250, 2);
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    Rng structure = make_rng(21, 1, rep);
    PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
    RsaStreams streams = make_rsa_streams(21, rep);
    CoupledRun run = run_coupled_upper(cloud, geom, streams);
    REQUIRE(run.upper.has_value());
    const auto& u = run.upper->trajectory;
    const auto& z = run.z.trajectory;
    CHECK(u.hitting_time() <= z.hitting_time());
    for (std::size_t i = 0; i < u.z.size(); ++i) CHECK(u.z[i] >= z.z[i]);
    for (double r_t : run.r_tilde) CHECK(r_t >= geom.radius);
  }
}

TEST_CASE("lower process accepts the first step surely and never overtakes Z") {
  const BoxGeometry geom = box_for_mean_degree(1.4, 1.0, 250, 2);
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    Rng structure = make_rng(23, 1, rep);
    PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
    RsaStreams streams = make_rsa_streams(23, rep);
    CoupledRun run = run_coupled_lower(cloud, geom, streams);
    REQUIRE(run.lower.has_value());
    const auto& l = run.lower->trajectory;
    const auto& z = run.z.trajectory;
    REQUIRE(run.alpha.size() == static_cast<std::size_t>(l.hitting_time()));
    CHECK(run.alpha[0] == 1.0);
    CHECK(l.z[1] == z.z[1]);
    CHECK(l.hitting_time() >= z.hitting_time());
    for (std::size_t i = 0; i < z.z.size(); ++i) CHECK(l.z[i] <= z.z[i]);
    for (std::size_t i = 1; i < run.alpha.size(); ++i) {
      CHECK(run.alpha[i] <= run.alpha[i - 1] + 1e-15);
      CHECK(run.alpha[i] >= 0.0);
    }
    // Accepted steps record exactly the fresh ball measure, rejected ones zero.
    const double v = geom.ball_measure();
    for (double area : run.lower->step_areas) CHECK((area == 0.0 || area == v));
    CHECK(l.z.back() == cloud.size());  // the lower process still jams everything
  }
}

TEST_CASE("the Z path is invariant to which bounding processes run alongside") {
  const BoxGeometry geom = box_for_mean_degree(1.0, 1.0, 200, 2);
  Rng structure = make_rng(33, 1, 0);
  const PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);

  RsaOptions none, upper_only, lower_only, both;
  upper_only.with_upper = true;
  lower_only.with_lower = true;
  both.with_upper = both.with_lower = true;

  std::vector<CoupledRun> runs;
  for (const RsaOptions& opt : {none, upper_only, lower_only, both}) {
    RsaStreams streams = make_rsa_streams(33, 0);
    runs.push_back(run_coupled(cloud, geom, streams, opt));
  }
  Rng plain = make_rng(33, 0, 0);  // the selection stream of make_rsa_streams(33, 0)
  RsaRun direct = run_rsa(cloud, geom, plain);

  for (const CoupledRun& run : runs) {
    CHECK(run.z.trajectory.z == direct.trajectory.z);
    CHECK(run.z.step_areas == direct.step_areas);
    CHECK(run.z.selection_order == direct.selection_order);
  }
}

TEST_CASE("a crowded box saturates the radius search at the diagonal") {
  BoxGeometry geom = square_box(2.0, 0.9);
  geom.intensity = 3.0;
  Rng structure = make_rng(11, 1, 0);
  PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
  RsaStreams streams = make_rsa_streams(11, 0);
  RsaOptions options;
  options.with_upper = true;
  CoupledRun run = run_coupled(cloud, geom, streams, options);
  REQUIRE(run.upper.has_value());
  bool any_saturated = false;
  for (char s : run.saturated) any_saturated = any_saturated || s != 0;
  CHECK(any_saturated);
  CHECK(run.r_tilde.back() == doctest::Approx(geom.diagonal()));
  CHECK(run.upper->trajectory.hitting_time() <= run.z.trajectory.hitting_time());
}

TEST_CASE("bound curves: slopes, closed form, ordering, and the slope-one tail") {
  for (double c : {0.5, 1.0, 1.4, 2.0}) {
    const BoundCurves curves = integrate_bounds(c);
    const double h = curves.grid[1] - curves.grid[0];
    CHECK((curves.u_values[1] - curves.u_values[0]) / h == doctest::Approx(1.0 + c).epsilon(1e-3));
    CHECK((curves.l_values[1] - curves.l_values[0]) / h == doctest::Approx(1.0 + c).epsilon(1e-3));
    CHECK(curves.t_lower == doctest::Approx((1.0 - std::exp(-c)) / c).epsilon(1e-9));
    CHECK(curves.t_lower < curves.t_upper);

    double sup = 0.0;
    for (std::size_t i = 0; i < curves.grid.size(); ++i) {
      sup = std::max(sup, std::abs(curves.u_values[i] - rsa_upper_closed_form(c, curves.grid[i])));
      CHECK(curves.l_values[i] <= curves.u_values[i] + 1e-12);
      CHECK(curves.w2_values[i] >= 0.0);
      CHECK(curves.w2_values[i] <= 1.0);
      if (i > 0) CHECK(curves.w2_values[i] <= curves.w2_values[i - 1] + 1e-12);
    }
    CHECK(sup <= 1e-6);

    // Once the acceptance probability clamps at zero the lower curve advances
    // by exactly one vertex per step.
    const std::size_t tail = static_cast<std::size_t>(0.9 * curves.t_upper / h);
    CHECK((curves.l_values[tail + 1] - curves.l_values[tail]) / h == doctest::Approx(1.0).epsilon(1e-6));

    CHECK(curves.u_at(curves.t_lower) == 1.0);
    CHECK(curves.u_at(curves.t_lower + 1.0) == 1.0);
    CHECK(curves.u_at(0.5 * curves.t_lower) < 1.0);
    CHECK(curves.l_at(curves.t_upper) == 1.0);
    CHECK(curves.l_at(0.0) == 0.0);
  }

  CHECK(rsa_upper_closed_form(1.0, 10.0) == 1.0);
  CHECK(rsa_upper_closed_form(1.0, 1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-9));

  // Both hitting times collapse onto each other as c -> 0.
  const BoundCurves tiny = integrate_bounds(0.01);
  CHECK(std::abs(tiny.t_upper - tiny.t_lower) <= 1e-3);
}

TEST_CASE("mean coupled paths track the bound curves") {
  const double c = 1.4;
  const std::int64_t n = 2000;
  const BoxGeometry geom = box_for_mean_degree(c, 1.0, n, 2);
  const BoundCurves curves = integrate_bounds(c);
  const int reps = 20;

  std::vector<double> tgrid;
  for (double t = 0.0; t <= curves.t_upper + 0.05; t += 0.01) tgrid.push_back(t);
  std::vector<double> mean_u(tgrid.size(), 0.0), mean_l(tgrid.size(), 0.0);

  RsaOptions options;
  options.with_upper = true;
  options.with_lower = true;
  for (int rep = 0; rep < reps; ++rep) {
    Rng structure = make_rng(7, 1, static_cast<std::uint64_t>(rep));
    PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
    RsaStreams streams = make_rsa_streams(7, static_cast<std::uint64_t>(rep));
    CoupledRun run = run_coupled(cloud, geom, streams, options);
    REQUIRE(run.upper->trajectory.hitting_time() <= run.z.trajectory.hitting_time());
    REQUIRE(run.z.trajectory.hitting_time() <= run.lower->trajectory.hitting_time());
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
      mean_u[i] += run.upper->trajectory.scaled_at(tgrid[i]) / reps;
      mean_l[i] += run.lower->trajectory.scaled_at(tgrid[i]) / reps;
    }
  }

  double sup_u = 0.0, sup_l = 0.0;
  for (std::size_t i = 0; i < tgrid.size(); ++i) {
    sup_u = std::max(sup_u, std::abs(mean_u[i] - curves.u_at(tgrid[i])));
    sup_l = std::max(sup_l, std::abs(mean_l[i] - curves.l_at(tgrid[i])));
  }
  CHECK(sup_u <= 0.03);
  CHECK(sup_l <= 0.03);
}

TEST_CASE("recorded step areas respect the mean bracket") {
  const double c = 1.0;
  const BoxGeometry geom = box_for_mean_degree(c, 1.0, 400, 2);
  std::vector<RsaRun> runs;
  for (std::uint64_t rep = 0; rep < 30; ++rep) {
    Rng structure = make_rng(5, 1, rep);
    PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
    Rng selection = make_rng(5, 0, rep);
    runs.push_back(run_rsa(cloud, geom, selection));
  }
  const VolumeBoundsReport report = check_volume_bounds(runs, geom);
  CHECK(report.all_ok);
  REQUIRE(!report.rows.empty());
  CHECK(report.rows[0].samples >= 20);
  CHECK(report.rows[0].mean_area == doctest::Approx(geom.ball_measure()).epsilon(0.01));
  CHECK(report.rows[0].lower_bound_mean == doctest::Approx(geom.ball_measure()));
  CHECK(report.rows[0].upper_bound > geom.ball_measure());
  bool any_vacuous = false;
  for (const auto& row : report.rows) any_vacuous = any_vacuous || row.vacuous;
  CHECK(any_vacuous);  // deep steps run out of interior samples or of bound
  CHECK_THROWS_AS(check_volume_bounds({}, geom), std::invalid_argument);
}

TEST_CASE("wall-truncated selections only count when interior filtering is off") {
  const BoxGeometry geom = square_box(2.0, 0.3);
  PointCloud cloud = cloud_of({{0.05, 0.05}});
  std::vector<RsaRun> runs;
  for (std::uint64_t rep = 0; rep < 2; ++rep) {
    Rng selection = make_rng(3, 0, rep);
    runs.push_back(run_rsa(cloud, geom, selection));
  }
  const VolumeBoundsReport filtered = check_volume_bounds(runs, geom);
  CHECK(filtered.all_ok);
  CHECK(filtered.rows[0].samples == 0);
  CHECK(filtered.rows[0].vacuous);

  VolumeBoundsOptions options;
  options.interior_only = false;
  const VolumeBoundsReport unfiltered = check_volume_bounds(runs, geom, options);
  CHECK(unfiltered.rows[0].samples == 2);
  CHECK_FALSE(unfiltered.all_ok);  // truncated discs sit far below the fresh-ball mean
}
