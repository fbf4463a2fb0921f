#include "hartree/functional.hpp"
#include "hartree/rearrange.hpp"
#include "hartree/riesz.hpp"
#include "hartree/solver.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace hartree;

namespace {

Field gaussian(const GridSpec &s) {
  return Field::sample(s, [](const Point &x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
}

void BM_RieszApply3D(benchmark::State &state) {
  const GridSpec s(3, 8.0, static_cast<std::size_t>(state.range(0)));
  const RieszPlan plan(s, 2.0);
  const auto f = gaussian(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(plan.apply(f));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}
BENCHMARK(BM_RieszApply3D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RieszDirect2D(benchmark::State &state) {
  const GridSpec s(2, 4.0, 32);
  const auto f = gaussian(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(riesz_direct(f, 1.0));
}
BENCHMARK(BM_RieszDirect2D)->Unit(benchmark::kMillisecond);

void BM_EulerResidual3D(benchmark::State &state) {
  const GridSpec s(3, 8.0, static_cast<std::size_t>(state.range(0)));
  const Functional F(ProblemParams(3, 2.0, 2.0, 2.0), s);
  const StatePair w(gaussian(s), gaussian(s));
  for (auto _ : state)
    benchmark::DoNotOptimize(F.euler_residual(w));
}
BENCHMARK(BM_EulerResidual3D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolverStep3D(benchmark::State &state) {
  SolveConfig cfg(ProblemParams(3, 2.0, 2.0, 2.0),
                  GridSpec(3, 8.0, static_cast<std::size_t>(state.range(0))));
  cfg.symmetrize_every = 0;
  Solver solver(cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(solver.step());
}
BENCHMARK(BM_SolverStep3D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Schwarz3D(benchmark::State &state) {
  const GridSpec s(3, 8.0, 64);
  const auto f = gaussian(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(schwarz(f));
}
BENCHMARK(BM_Schwarz3D)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
