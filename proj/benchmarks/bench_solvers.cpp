#include <benchmark/benchmark.h>

#include <cmath>

#include <urysohn/analysis.hpp>
#include <urysohn/published.hpp>
#include <urysohn/quadrature.hpp>
#include <urysohn/solvers.hpp>

using namespace urysohn;

static void BM_CompositeGauss(benchmark::State& state) {
  const auto grid = CompositeGrid::uniform(static_cast<int>(state.range(0)), gauss_legendre(2));
  const RealFunction g = [](double t) { return std::exp(-t) * std::cos(3.0 * t); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate(g, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CompositeGauss)->RangeMultiplier(4)->Range(16, 4096);

static void BM_Collocation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscretizedOperator op(example1(), NodeSet(UniformMesh(n), 0), n, false);
  for (auto _ : state) benchmark::DoNotOptimize(solve_collocation(op, {}));
}
BENCHMARK(BM_Collocation)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

static void BM_Modified(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscretizedOperator op(example2(), NodeSet(UniformMesh(n), 0), n * n, false);
  for (auto _ : state) benchmark::DoNotOptimize(solve_modified(op, {}));
}
BENCHMARK(BM_Modified)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

static void BM_Table2Row(benchmark::State& state) {
  const auto preset = table_preset(2);
  StudyOptions opts;
  opts.quadrature = preset.quadrature;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_convergence_study(preset.problem, 0, {n / 2, n}, {}, opts));
}
BENCHMARK(BM_Table2Row)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
