#include <benchmark/benchmark.h>

#include <random>

#include "jamsim/exploration.hpp"
#include "jamsim/random_graphs.hpp"
#include "jamsim/region.hpp"
#include "jamsim/rng.hpp"
#include "jamsim/rsa.hpp"

namespace {

using namespace jamsim;

void BM_ErChain(benchmark::State& state) {
  const ErParams params{state.range(0), 1.0};
  std::uint64_t rep = 0;
  for (auto _ : state) {
    Rng rng = make_rng(42, rep++, 0);
    benchmark::DoNotOptimize(simulate_er_chain(params, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ErChain)->Arg(1000)->Arg(10000);

void BM_ErGraphReplicate(benchmark::State& state) {
  const ErParams params{state.range(0), 1.0};
  std::uint64_t rep = 0;
  for (auto _ : state) {
    Rng structure = make_rng(42, rep, 1);
    Rng dynamics = make_rng(42, rep, 0);
    ++rep;
    const AdjacencyGraph graph = sample_er_graph(params, structure);
    benchmark::DoNotOptimize(explore_graph(graph, dynamics));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ErGraphReplicate)->Arg(1000)->Arg(4000);

void BM_RsaRun(benchmark::State& state) {
  const BoxGeometry geom = box_for_mean_degree(1.4, 1.0, state.range(0), 2);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    Rng structure = make_rng(42, rep, 1);
    Rng selection = make_rng(42, rep, 0);
    ++rep;
    const PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
    benchmark::DoNotOptimize(run_rsa(cloud, geom, selection));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RsaRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CoupledRun(benchmark::State& state) {
  const BoxGeometry geom = box_for_mean_degree(1.4, 1.0, state.range(0), 2);
  RsaOptions options;
  options.with_upper = true;
  options.with_lower = true;
  std::uint64_t rep = 0;
  for (auto _ : state) {
    Rng structure = make_rng(42, rep, 1);
    RsaStreams streams = make_rsa_streams(42, rep);
    ++rep;
    const PointCloud cloud = sample_point_cloud(geom, CountMode::FixedCount, structure);
    benchmark::DoNotOptimize(run_coupled(cloud, geom, streams, options));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoupledRun)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

ExploredRegion prefilled_region(const BoxGeometry& geom) {
  ExploredRegion region(geom, geom.radius / 64.0);
  Rng rng = make_rng(42, 0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Vec2 p{unit(rng) * geom.side[0], unit(rng) * geom.side[1]};
    region.add_ball(p, geom.radius);
  }
  return region;
}

// Prefilled region shared across iterations; queries do not mutate it.
void BM_RasterFreeMeasure(benchmark::State& state) {
  const BoxGeometry geom = box_for_mean_degree(1.4, 1.0, 1000, 2);
  const ExploredRegion region = prefilled_region(geom);
  const Vec2 center{0.5 * geom.side[0], 0.5 * geom.side[1]};
  for (auto _ : state) {
    benchmark::DoNotOptimize(region.free_ball_measure(center, geom.radius));
  }
}
BENCHMARK(BM_RasterFreeMeasure);

void BM_RadiusSearch(benchmark::State& state) {
  const BoxGeometry geom = box_for_mean_degree(1.4, 1.0, 1000, 2);
  const ExploredRegion region = prefilled_region(geom);
  const Vec2 center{0.5 * geom.side[0], 0.5 * geom.side[1]};
  const double target = geom.ball_measure();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        region.find_radius_for_area(center, target, geom.radius, 1e-3 * target));
  }
}
BENCHMARK(BM_RadiusSearch);

void BM_IntegrateBounds(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_bounds(1.4));
  }
}
BENCHMARK(BM_IntegrateBounds)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
