#include <benchmark/benchmark.h>

#include <vector>

#include "hsfrac/fields.hpp"
#include "hsfrac/optimizer.hpp"
#include "hsfrac/quadform.hpp"

using namespace hsfrac;

namespace {

// Nodes per axis: 1D uses the argument directly, 2D its square grid.
Grid bench_grid(int n, int m) { return Grid::half_space(n, 32.0, m, m); }

TrialFunction bench_field(const Grid& g) { return bubble(g, {8.0, 0.0, 0.0}, 2.0, 0.4); }

void BM_FourierApply(benchmark::State& state) {
  const Grid g = bench_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const TrialFunction u = bench_field(g);
  FractionalOperator op(g, 0.4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(u.values()));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_FourierApply)->Args({1, 4097})->Args({1, 65537})->Args({2, 129})->Args({2, 257});

void BM_GagliardoForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = bench_grid(n, static_cast<int>(state.range(1)));
  const TrialFunction u = bench_field(g);
  for (auto _ : state) benchmark::DoNotOptimize(gagliardo_form(u, n, 0.4));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_GagliardoForm)->Args({1, 4097})->Args({2, 129})->Unit(benchmark::kMillisecond);

void BM_RegionalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = bench_grid(n, static_cast<int>(state.range(1)));
  const TrialFunction u = bench_field(g);
  for (auto _ : state) benchmark::DoNotOptimize(regional_form(u, n, 0.4));
}
BENCHMARK(BM_RegionalForm)->Args({1, 4097})->Args({2, 129})->Unit(benchmark::kMillisecond);

void BM_QuotientAndGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = bench_grid(n, static_cast<int>(state.range(1)));
  const TrialFunction u = bench_field(g);
  QuotientFunctional f(g, {n, 0.4, 2.0 * n / (n - 0.8), 0.0, 0.1}, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.value(u.values()));
    benchmark::DoNotOptimize(f.gradient(u.values()));
  }
}
BENCHMARK(BM_QuotientAndGradient)->Args({1, 4097})->Args({2, 257});

void BM_Minimize(benchmark::State& state) {
  const Grid g = Grid::half_space(1, 32.0, 513, 513);
  const QuotientSpec spec = QuotientSpec::from(Params::make(1, 0.4, 3.0, 0.0));
  OptimizerOptions opts;
  opts.max_iters = static_cast<int>(state.range(0));
  opts.tol = 0.0;
  const TrialFunction init = default_initial_field(g, spec.s);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_quotient(spec, init, opts).best_quotient);
}
BENCHMARK(BM_Minimize)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
