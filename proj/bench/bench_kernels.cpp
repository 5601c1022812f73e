// Parallel kernels against their serial references on generated instances.

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "weakdiam/generate.hpp"
#include "weakdiam/graph.hpp"
#include "weakdiam/parallel.hpp"
#include "weakdiam/serial.hpp"
#include "weakdiam/spacefill.hpp"

namespace {

using namespace weakdiam;

const Instance& instance(std::size_t objects) {
  static std::map<std::size_t, Instance> cache;
  auto it = cache.find(objects);
  if (it == cache.end()) {
    GenerateParams p;
    p.dimension = 2;
    p.points = 20 * objects;
    p.objects = objects;
    p.extent = std::sqrt(static_cast<double>(objects)) * 1.2;
    p.seed = 42;
    it = cache.emplace(objects, generate(p)).first;
  }
  return it->second;
}

Coloring striped(std::size_t n) {
  Coloring c{std::vector<Color>(n), 3};
  for (std::size_t i = 0; i < n; ++i) c.colors[i] = static_cast<Color>(1 + i % 3);
  return c;
}

void BM_IntersectionGraph(benchmark::State& state) {
  const auto& in = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(intersection_graph(in.objects));
}

void BM_IntersectionGraphSerial(benchmark::State& state) {
  const auto& in = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::intersection_graph(in.objects));
}

void BM_GraphPower(benchmark::State& state) {
  const Graph g = intersection_graph(instance(static_cast<std::size_t>(state.range(0))).objects);
  for (auto _ : state) benchmark::DoNotOptimize(graph_power(g, 5));
}

void BM_GraphPowerSerial(benchmark::State& state) {
  const Graph g = intersection_graph(instance(static_cast<std::size_t>(state.range(0))).objects);
  for (auto _ : state) benchmark::DoNotOptimize(serial::graph_power(g, 5));
}

void BM_ShallowUnion(benchmark::State& state) {
  const auto& in = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shallow_union_system(in.objects, 2));
}

void BM_ShallowUnionSerial(benchmark::State& state) {
  const auto& in = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::shallow_union_system(in.objects, 2));
}

void BM_ColoringDiameter(benchmark::State& state) {
  const Graph g = graph_power(intersection_graph(instance(static_cast<std::size_t>(state.range(0))).objects), 3);
  const Coloring c = striped(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(coloring_diameter(g, c));
}

void BM_ColoringDiameterSerial(benchmark::State& state) {
  const Graph g = graph_power(intersection_graph(instance(static_cast<std::size_t>(state.range(0))).objects), 3);
  const Coloring c = striped(g.size());
  for (auto _ : state) benchmark::DoNotOptimize(serial::coloring_diameter(g, c));
}

}  // namespace

BENCHMARK(BM_IntersectionGraph)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntersectionGraphSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphPower)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphPowerSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShallowUnion)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShallowUnionSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColoringDiameter)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColoringDiameterSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
