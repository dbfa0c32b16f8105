#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "sinrcg/conflict_graph.hpp"
#include "sinrcg/experiment.hpp"
#include "sinrcg/physical_model.hpp"
#include "sinrcg/scheduling.hpp"

namespace {

using namespace sinrcg;

Instance instance(int n) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.l_max = {100.0};
  return gen_random_instance(cfg, 100.0, 0);
}

const double kDelta = delta_from_epsilon(0.5, 2.8, 2);

void BM_BuildGraph(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_conflict_graph(inst, ConflictFn{2.0, kDelta}));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGraph)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

// Rebuilding from cached pair geometry, as the gamma search does.
void BM_RebuildFromGeometry(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)));
  const PairwiseGeometry geometry(inst, kDelta);
  double gamma = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry.build(gamma));
    gamma = gamma < 1024.0 ? gamma * 2.0 : 1.0;
  }
}
BENCHMARK(BM_RebuildFromGeometry)->RangeMultiplier(2)->Range(64, 1024);

void BM_LocalRatio(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)));
  const ConflictGraph g = build_conflict_graph(inst, ConflictFn{2.0, kDelta});
  std::vector<double> w;
  for (const Link& l : inst.links) w.push_back(l.weight);
  for (auto _ : state) benchmark::DoNotOptimize(local_ratio_mwis(g, w));
}
BENCHMARK(BM_LocalRatio)->RangeMultiplier(2)->Range(64, 1024);

void BM_FirstFit(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)));
  const ConflictGraph g = build_conflict_graph(inst, ConflictFn{2.0, kDelta});
  const std::vector<int> order = g.order_ids();
  for (auto _ : state) benchmark::DoNotOptimize(first_fit_coloring(g, order));
}
BENCHMARK(BM_FirstFit)->RangeMultiplier(2)->Range(64, 1024);

void BM_Feasibility(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)));
  const PowerAssignment power = PowerAssignment::tau(choose_tau(kDelta, 2.8, 2));
  for (auto _ : state) benchmark::DoNotOptimize(feasible(inst.links, power, inst.alpha));
}
BENCHMARK(BM_Feasibility)->RangeMultiplier(2)->Range(16, 512);

void BM_GreedyHeuristic(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)));
  const PowerAssignment power = PowerAssignment::tau(choose_tau(kDelta, 2.8, 2));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_feasibility_heuristic(inst, power));
}
BENCHMARK(BM_GreedyHeuristic)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_GammaSearch(benchmark::State& state) {
  const Instance inst = instance(static_cast<int>(state.range(0)));
  const double tau = choose_tau(kDelta, 2.8, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        binary_search_gamma(inst, kDelta, tau, 1.0, 1048576.0, SearchTarget::Mwis));
  }
}
BENCHMARK(BM_GammaSearch)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
