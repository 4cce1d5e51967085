#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <memory>

#include "wshed/wshed.hpp"

namespace {

struct Network {
  wshed::StreamTree tree;
  wshed::MnsLabels labels;
  wshed::CatchmentTable catchments;
};

const Network& network(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<Network>> cache;
  auto& slot = cache[n];
  if (!slot) {
    wshed::SyntheticSpec spec;
    spec.n = n;
    spec.width = spec.height = static_cast<std::int32_t>(std::ceil(std::sqrt(3.0 * static_cast<double>(n))));
    spec.seed = 7;
    auto net = wshed::generate(spec);
    wshed::MnsLabels labels = wshed::mns_label(net.tree);
    wshed::CatchmentTable table(net.tree, wshed::partition_from_raster(net.raster, net.tree));
    slot = std::make_unique<Network>(Network{std::move(net.tree), std::move(labels), std::move(table)});
  }
  return *slot;
}

void BM_MnsLabel(benchmark::State& state) {
  const Network& net = network(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wshed::mns_label(net.tree));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MnsLabel)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

void BM_BuildLrg(benchmark::State& state) {
  const Network& net = network(static_cast<std::size_t>(state.range(0)));
  const int b = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(wshed::build_lrg(net.tree, net.labels, net.catchments, b));
}
BENCHMARK(BM_BuildLrg)
    ->ArgsProduct({{1000, 10000, 100000}, {2, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_StitchQuery(benchmark::State& state) {
  const Network& net = network(static_cast<std::size_t>(state.range(0)));
  const wshed::LrgIndex index = wshed::build_lrg(net.tree, net.labels, net.catchments, 2).index;
  std::size_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wshed::stitch_watershed(index, net.tree.id(v)));
    v = (v + 7919) % net.tree.size();
  }
}
BENCHMARK(BM_StitchQuery)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_BaselineQuery(benchmark::State& state) {
  const Network& net = network(static_cast<std::size_t>(state.range(0)));
  std::size_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wshed::baseline_query(net.labels, net.catchments, net.tree.id(v)));
    v = (v + 7919) % net.tree.size();
  }
}
BENCHMARK(BM_BaselineQuery)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_TraceBoundary(benchmark::State& state) {
  const Network& net = network(static_cast<std::size_t>(state.range(0)));
  const wshed::CellCatchment all = wshed::baseline_query(net.labels, net.catchments, net.tree.root_id()).cells;
  for (auto _ : state) benchmark::DoNotOptimize(wshed::trace_boundary(all));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(all.area()));
}
BENCHMARK(BM_TraceBoundary)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
