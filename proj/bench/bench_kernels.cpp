// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "jaynes/bell_chsh.hpp"
#include "jaynes/maxent.hpp"
#include "jaynes/sweep.hpp"

namespace {

jaynes::SweepGrid grid_of(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return {0.5, 1.0, n, n};
}

void BM_sweep_parallel(benchmark::State& state) {
  const jaynes::SweepGrid g = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(jaynes::sweep(g));
  state.SetItemsProcessed(state.iterations() * g.b_steps * g.x_steps);
}

void BM_sweep_serial(benchmark::State& state) {
  const jaynes::SweepGrid g = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(jaynes::sweep_reference(g));
  state.SetItemsProcessed(state.iterations() * g.b_steps * g.x_steps);
}

std::vector<jaynes::ConstraintSet> problems(int n) {
  const jaynes::ChshOperators ops = jaynes::chsh_operators();
  std::vector<jaynes::ConstraintSet> out;
  for (int i = 0; i < n; ++i) {
    const double b = 0.5 + 0.45 * i / n;
    const double x = 0.5 * (2 * b - 1) + 0.5;
    out.emplace_back(4, std::vector<jaynes::Constraint>{{"B", ops.b, b}, {"X", ops.x, x}});
  }
  return out;
}

void BM_solve_all_parallel(benchmark::State& state) {
  const auto p = problems(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jaynes::solve_all(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_solve_all_serial(benchmark::State& state) {
  const auto p = problems(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jaynes::solve_all_reference(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_sweep_parallel)->Arg(11)->Arg(41)->Arg(101)->UseRealTime();
BENCHMARK(BM_sweep_serial)->Arg(11)->Arg(41)->Arg(101)->UseRealTime();
BENCHMARK(BM_solve_all_parallel)->Arg(16)->Arg(128)->UseRealTime();
BENCHMARK(BM_solve_all_serial)->Arg(16)->Arg(128)->UseRealTime();

BENCHMARK_MAIN();
