#include <benchmark/benchmark.h>
#include <omp.h>

#include "chartlab/chart.hpp"
#include "chartlab/relstruct.hpp"
#include "chartlab/semigroup.hpp"

using namespace chartlab;

namespace {

std::vector<Chart> generators_of_in(std::size_t n) {
  auto gens = symmetric_group_generators(n);
  std::vector<Point> p(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) p[i] = static_cast<Point>(i);
  gens.push_back(Chart::partial_identity(n, p));
  return gens;
}

RelStructure path_graph(std::size_t n) {
  std::vector<std::pair<Point, Point>> edges;
  for (Point i = 0; i + 1 < static_cast<Point>(n); ++i) edges.emplace_back(i, i + 1);
  return RelStructure::graph(n, edges);
}

void BM_Closure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  const auto gens = generators_of_in(n);
  for (auto _ : state) benchmark::DoNotOptimize(closure(gens, n).order());
}
BENCHMARK(BM_Closure)->ArgsProduct({{4, 5, 6}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

void BM_ClosureReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gens = generators_of_in(n);
  for (auto _ : state) benchmark::DoNotOptimize(closure_reference(gens, n).order());
}
BENCHMARK(BM_ClosureReference)->DenseRange(4, 5)->Unit(benchmark::kMillisecond);

void BM_IpEnd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  const auto g = path_graph(n);
  for (auto _ : state) benchmark::DoNotOptimize(ip_end(g).order());
}
BENCHMARK(BM_IpEnd)->ArgsProduct({{5, 6}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

void BM_IpEndReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = path_graph(n);
  for (auto _ : state) benchmark::DoNotOptimize(ip_end_reference(g).order());
}
BENCHMARK(BM_IpEndReference)->DenseRange(5, 6)->Unit(benchmark::kMillisecond);

void BM_PAut(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  const auto g = path_graph(n);
  for (auto _ : state) benchmark::DoNotOptimize(p_aut(g).order());
}
BENCHMARK(BM_PAut)->ArgsProduct({{5, 6}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

void BM_PAutReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = path_graph(n);
  for (auto _ : state) benchmark::DoNotOptimize(p_aut_reference(g).order());
}
BENCHMARK(BM_PAutReference)->DenseRange(5, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
