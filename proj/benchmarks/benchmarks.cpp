#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "refocus/compiler.hpp"
#include "refocus/graph.hpp"
#include "refocus/hadamard.hpp"
#include "refocus/schedule.hpp"
#include "refocus/simulator.hpp"

namespace {

using namespace refocus;

void BM_HadamardOfOrder(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hadamard_of_order(order));
  }
}
BENCHMARK(BM_HadamardOfOrder)->Arg(8)->Arg(20)->Arg(28)->Arg(48);

void BM_CompileComplete(benchmark::State& state) {
  const CouplingGraph g = CouplingGraph::complete(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile(g, RetainShift{0}));
  }
}
BENCHMARK(BM_CompileComplete)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

CouplingGraph dense_random_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(0.5);
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (edge(rng)) edges.emplace_back(a, b);
    }
  }
  return CouplingGraph(std::move(names), edges);
}

void BM_GreedyColoring(benchmark::State& state) {
  const CouplingGraph g = dense_random_graph(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_coloring(g));
  }
}
BENCHMARK(BM_GreedyColoring)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Simulate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CouplingGraph g = CouplingGraph::complete(n);
  const SignMatrix m = compile(g, RefocusAll{});
  const SpinSystemParams p = random_params(g, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(m, g, p));
  }
}
BENCHMARK(BM_Simulate)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_ScheduleRoundTrip(benchmark::State& state) {
  const CouplingGraph g = CouplingGraph::complete(static_cast<int>(state.range(0)));
  const SignMatrix m = compile(g, RetainShift{0});
  const PulseSchedule s = schedule_from_sign_matrix(m, 1.0, false, g.names());
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_schedule(to_json(s)));
  }
}
BENCHMARK(BM_ScheduleRoundTrip)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
