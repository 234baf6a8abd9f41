#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "jamsim/random_graphs.hpp"

using namespace jamsim;

TEST_CASE("ErParams validation") {
  CHECK_NOTHROW(validate(ErParams{10, 0.0}));  // degenerate edgeless case is allowed
  CHECK_NOTHROW(validate(ErParams{10, 10.0}));
  CHECK_THROWS(validate(ErParams{0, 1.0}));
  CHECK_THROWS(validate(ErParams{10, -0.5}));
  CHECK_THROWS(validate(ErParams{10, 10.5}));  // edge probability above 1
}

TEST_CASE("sample_er_graph degenerate cases") {
  Rng rng = make_rng(5, 0, 0);
  const AdjacencyGraph empty = sample_er_graph(ErParams{40, 0.0}, rng);
  CHECK(empty.vertex_count() == 40);
  CHECK(empty.edge_count() == 0);

  const AdjacencyGraph complete = sample_er_graph(ErParams{6, 6.0}, rng);
  CHECK(complete.edge_count() == 15);
  for (std::size_t v = 0; v < 6; ++v) CHECK(complete.neighbors[v].size() == 5);
}

TEST_CASE("sample_er_graph structure invariants") {
  Rng rng = make_rng(11, 0, 0);
  const AdjacencyGraph g = sample_er_graph(ErParams{300, 2.0}, rng);
  for (std::size_t v = 0; v < 300; ++v) {
    const auto& nb = g.neighbors[v];
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());  // no multi-edges
    for (std::int32_t u : nb) {
      CHECK(u != static_cast<std::int32_t>(v));  // no self-loops
      const auto& back = g.neighbors[static_cast<std::size_t>(u)];
      CHECK(std::binary_search(back.begin(), back.end(), static_cast<std::int32_t>(v)));
    }
  }
}

TEST_CASE("sample_er_graph mean degree is near c") {
  Rng rng = make_rng(12, 0, 0);
  const std::int64_t n = 4000;
  const double c = 1.5;
  const AdjacencyGraph g = sample_er_graph(ErParams{n, c}, rng);
  const double mean_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
  // sd of the mean degree is about sqrt(2 c / n) ~ 0.027 here
  CHECK(std::abs(mean_degree - c * (n - 1.0) / n) < 0.15);
}

TEST_CASE("box_for_mean_degree hits the requested mean degree") {
  const BoxGeometry square = box_for_mean_degree(1.4, 1.0, 2000, 2);
  CHECK(square.dimension == 2);
  CHECK(square.mean_degree() == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(square.intensity * square.box_measure() == doctest::Approx(2000).epsilon(1e-12));

  const BoxGeometry line = box_for_mean_degree(0.8, 2.0, 500, 1);
  CHECK(line.dimension == 1);
  CHECK(line.mean_degree() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(line.intensity * line.box_measure() == doctest::Approx(500).epsilon(1e-12));

  CHECK_THROWS(box_for_mean_degree(0.0, 1.0, 100, 2));
  CHECK_THROWS(box_for_mean_degree(1.0, 1.0, 100, 3));
}

TEST_CASE("BoxGeometry validation") {
  BoxGeometry geom;
  geom.dimension = 2;
  geom.side = {10.0, 10.0};
  geom.intensity = 1.0;
  geom.radius = 1.0;
  CHECK_NOTHROW(validate(geom));
  geom.radius = -1.0;
  CHECK_THROWS(validate(geom));
  geom.radius = 20.0;  // ball no smaller than the box
  CHECK_THROWS(validate(geom));
  geom.radius = 1.0;
  geom.dimension = 3;
  CHECK_THROWS(validate(geom));
}

TEST_CASE("sample_point_cloud counts and support") {
  BoxGeometry geom;
  geom.dimension = 2;
  geom.side = {8.0, 4.0};
  geom.intensity = 3.0;
  geom.radius = 0.5;
  Rng rng = make_rng(21, 0, 0);

  const PointCloud fixed = sample_point_cloud(geom, CountMode::FixedCount, rng);
  CHECK(fixed.size() == 96);  // round(3 * 32)
  for (const Vec2& p : fixed.points) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 8.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 4.0);
  }

  double total = 0.0;
  const int reps = 400;
  for (int i = 0; i < reps; ++i) {
    Rng r2 = make_rng(21, static_cast<std::uint64_t>(i), 1);
    total += static_cast<double>(sample_point_cloud(geom, CountMode::PoissonCount, r2).size());
  }
  const double mean = total / reps;  // Poisson(96): sd of the mean ~ 0.49
  CHECK(std::abs(mean - 96.0) < 2.5);
}

TEST_CASE("build_rgg: grid index agrees with brute force exactly") {
  BoxGeometry geom;
  geom.dimension = 2;
  geom.side = {12.0, 12.0};
  geom.intensity = 2.5;
  geom.radius = 0.7;
  Rng rng = make_rng(31, 0, 1);
  const PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, rng);

  const AdjacencyGraph fast = build_rgg(cloud, geom, NeighborMethod::GridIndex);
  const AdjacencyGraph slow = build_rgg(cloud, geom, NeighborMethod::BruteForce);
  REQUIRE(fast.vertex_count() == slow.vertex_count());
  for (std::size_t v = 0; v < fast.neighbors.size(); ++v) CHECK(fast.neighbors[v] == slow.neighbors[v]);

  // closed-ball convention: adjacency iff squared distance <= r^2
  for (std::size_t v = 0; v < fast.neighbors.size(); ++v) {
    for (std::int32_t u : fast.neighbors[v]) {
      const double dx = cloud.points[v].x - cloud.points[static_cast<std::size_t>(u)].x;
      const double dy = cloud.points[v].y - cloud.points[static_cast<std::size_t>(u)].y;
      CHECK(dx * dx + dy * dy <= geom.radius * geom.radius);
    }
  }
}

TEST_CASE("build_rgg in one dimension") {
  BoxGeometry geom;
  geom.dimension = 1;
  geom.side = {50.0, 1.0};
  geom.intensity = 4.0;
  geom.radius = 0.3;
  Rng rng = make_rng(32, 0, 1);
  const PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, rng);
  const AdjacencyGraph fast = build_rgg(cloud, geom, NeighborMethod::GridIndex);
  const AdjacencyGraph slow = build_rgg(cloud, geom, NeighborMethod::BruteForce);
  for (std::size_t v = 0; v < fast.neighbors.size(); ++v) CHECK(fast.neighbors[v] == slow.neighbors[v]);
}

TEST_CASE("PointGrid append_within matches a brute-force filter") {
  BoxGeometry geom;
  geom.dimension = 2;
  geom.side = {9.0, 9.0};
  geom.intensity = 3.0;
  geom.radius = 0.6;
  Rng rng = make_rng(33, 0, 1);
  const PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, rng);
  const PointGrid grid(cloud, geom, geom.radius);

  std::vector<std::int32_t> got, want;
  // query radii both below and well above the bucket size
  const double radii[] = {0.25, 0.6, 1.9};
  for (double radius : radii) {
    for (int q = 0; q < 25; ++q) {
      const Vec2 center = cloud.points[static_cast<std::size_t>(q * 7 % cloud.size())];
      got.clear();
      grid.append_within(center, radius, got);
      std::sort(got.begin(), got.end());
      want.clear();
      for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const double dx = cloud.points[i].x - center.x;
        const double dy = cloud.points[i].y - center.y;
        if (dx * dx + dy * dy <= radius * radius) want.push_back(static_cast<std::int32_t>(i));
      }
      CHECK(got == want);
    }
  }
}
