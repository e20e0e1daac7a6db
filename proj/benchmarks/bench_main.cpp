#include "symdecomp/decompose.hpp"

#include <benchmark/benchmark.h>

using namespace symdecomp;

namespace {

SymmetricGrid cube(int n) { return build_grid(3, 5.0, {n, n, n}); }

void BM_SpmvFull(benchmark::State& state) {
  const SymmetricGrid grid = cube(static_cast<int>(state.range(0)));
  const FullSystem full = assemble_full(oscillator_problem(3, 5.0), grid, Discretization{Scheme::FD2});
  Eigen::VectorXd x = Eigen::VectorXd::Ones(grid.size()), y(grid.size());
  for (auto _ : state) {
    spmv(full.A, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * full.A.nonZeros());
}
BENCHMARK(BM_SpmvFull)->Arg(21)->Arg(41);

void BM_SpmvReduced(benchmark::State& state) {
  const SymmetricGrid grid = cube(static_cast<int>(state.range(0)));
  const PointGroup g = builtin_group("D2H");
  const OrbitMap orbits(grid, g);
  const ReducedSystem r = assemble_reduced(oscillator_problem(3, 5.0), grid, Discretization{Scheme::FD2}, orbits, g, 1);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(r.size()), y(r.size());
  for (auto _ : state) {
    spmv(r.A, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * r.A.nonZeros());
}
BENCHMARK(BM_SpmvReduced)->Arg(21)->Arg(41);

void BM_AssembleReduced(benchmark::State& state) {
  const SymmetricGrid grid = cube(21);
  const PointGroup g = builtin_group("D4");
  const OrbitMap orbits(grid, g);
  const Scheme scheme = state.range(0) == 0 ? Scheme::FD2 : Scheme::Q1FE;
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_reduced(oscillator_problem(3, 5.0), grid, Discretization{scheme}, orbits, g, 5));
  }
}
BENCHMARK(BM_AssembleReduced)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SolveDirect(benchmark::State& state) {
  const SymmetricGrid grid = cube(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_direct(oscillator_problem(3, 5.0), grid, Discretization{Scheme::FD2}, 10));
  }
}
BENCHMARK(BM_SolveDirect)->Arg(15)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_SolveDecomposed(benchmark::State& state) {
  const SymmetricGrid grid = cube(static_cast<int>(state.range(0)));
  const PointGroup g = builtin_group("D2H");
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_decomposed(oscillator_problem(3, 5.0), grid, Discretization{Scheme::FD2}, g, 10));
  }
}
BENCHMARK(BM_SolveDecomposed)->Arg(15)->Arg(21)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
