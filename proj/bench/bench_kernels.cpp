// Serial reference against the OpenMP kernels.  Run with
// OMP_NUM_THREADS=k to vary the team size.

#include <vector>

#include <benchmark/benchmark.h>

#include "linni/continuation.hpp"
#include "linni/kernels.hpp"

using namespace linni;

namespace {

std::vector<double> centers(int count) {
  std::vector<double> a(count);
  for (int i = 0; i < count; ++i) a[i] = 0.05 + 2.95 * i / (count - 1);
  return a;
}

std::vector<double> frequencies(int count) {
  std::vector<double> nu(count);
  for (int i = 0; i < count; ++i) nu[i] = 0.1 + 100.0 * i / count;
  return nu;
}

const RadialProblem kProblem(4, 5.0, 3.5);
const IntegrationSettings kSettings{.tolerance = 1e-12};

void BM_ShootingMapSerial(benchmark::State& state) {
  const auto a = centers(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::shooting_map_serial(kProblem, a, kSettings));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ShootingMapParallel(benchmark::State& state) {
  const auto a = centers(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::shooting_map_parallel(kProblem, a, kSettings));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HelmholtzSerial(benchmark::State& state) {
  const auto nu = frequencies(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::helmholtz_slopes_serial(3, 1.0, nu, 1e-13));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HelmholtzParallel(benchmark::State& state) {
  const auto nu = frequencies(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::helmholtz_slopes_parallel(3, 1.0, nu, 1e-13));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

const std::vector<std::pair<int, Direction>> kRequests{
    {2, Direction::Upper}, {2, Direction::Lower}, {3, Direction::Upper}, {3, Direction::Lower}};

ContinuationOptions short_branches() {
  ContinuationOptions o;
  o.max_points = 150;
  return o;
}

void BM_BranchesSequential(benchmark::State& state) {
  const auto opt = short_branches();
  for (auto _ : state)
    for (const auto& [i, d] : kRequests) benchmark::DoNotOptimize(trace_branch(4, 10.0, i, d, opt));
}

void BM_BranchesConcurrent(benchmark::State& state) {
  const auto opt = short_branches();
  for (auto _ : state) benchmark::DoNotOptimize(trace_branches(4, 10.0, kRequests, opt));
}

} // namespace

BENCHMARK(BM_ShootingMapSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ShootingMapParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HelmholtzSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HelmholtzParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BranchesSequential)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BranchesConcurrent)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
