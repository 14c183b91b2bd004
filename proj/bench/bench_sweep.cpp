// Serial reference kernels vs their OpenMP counterparts.
//
//   ./bench_sweep --benchmark_filter=Sweep

#include <benchmark/benchmark.h>

#include <omp.h>

#include "crsum/klee.hpp"
#include "crsum/verify.hpp"

namespace {

using namespace crsum;

const GridSpec kRouteGrid{120, 120, {1, 2, 3}, {}};

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) {
    auto report = sweep_serial(IdentityId::route_agreement, kRouteGrid);
    benchmark::DoNotOptimize(report.cases_checked);
  }
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_SweepOpenMP(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto report = sweep(IdentityId::route_agreement, kRouteGrid, jobs);
    benchmark::DoNotOptimize(report.cases_checked);
  }
}
BENCHMARK(BM_SweepOpenMP)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KleeSeries(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto report = klee_series_eval(6, 1, 20000, 128, jobs);
    benchmark::DoNotOptimize(report.K);
  }
}
BENCHMARK(BM_KleeSeries)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
