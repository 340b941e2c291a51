#include <benchmark/benchmark.h>

#include "polyconv/boolean_poly.hpp"
#include "polyconv/constructions.hpp"
#include "polyconv/sdp_witness.hpp"
#include "polyconv/slices.hpp"

using namespace polyconv;

static void BM_CubeStatistics(benchmark::State& state) {
  const MultilinearPoly f = random_cubic(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(cube_statistics(f));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_CubeStatistics)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

static void BM_Delta(benchmark::State& state) {
  const MultilinearPoly f = random_cubic(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(delta(f));
}
BENCHMARK(BM_Delta)->Arg(10)->Arg(20)->Arg(40)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_GowersU3(benchmark::State& state) {
  const ZnFunction mu = mobius(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gowers_u3(mu));
}
BENCHMARK(BM_GowersU3)->Arg(25)->Arg(101)->Arg(257)->Unit(benchmark::kMillisecond);

static void BM_QuarticMembership(benchmark::State& state) {
  const QuarticBound q = quartic_lower_bound(random_cubic(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(verify_membership(q.witness));
}
BENCHMARK(BM_QuarticMembership)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
