#include <benchmark/benchmark.h>

#include "q1ca/sim.hpp"
#include "q1ca/validate.hpp"
#include "q1ca/zoo.hpp"

namespace {

void BM_RunKq1caBranch(benchmark::State& state) {
  const q1ca::Machine m = q1ca::build_m1();
  for (auto _ : state) {
    benchmark::DoNotOptimize(q1ca::run_rtq1ca(m, "aabbccc"));
  }
}
BENCHMARK(BM_RunKq1caBranch);

void BM_RunOneWayBranch(benchmark::State& state) {
  const q1ca::Machine m = q1ca::build_m2(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(q1ca::run_1q1ca(m, "aabbcc"));
  }
}
BENCHMARK(BM_RunOneWayBranch);

void BM_RunOneWayDensity(benchmark::State& state) {
  const q1ca::Machine m = q1ca::build_m2(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(q1ca::run_density(m, "aabbcc"));
  }
}
BENCHMARK(BM_RunOneWayDensity);

void BM_ValidateOneWay(benchmark::State& state) {
  const q1ca::Machine m = q1ca::build_m2(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(q1ca::check_one_way_q(m));
  }
}
BENCHMARK(BM_ValidateOneWay);

void BM_SweepKq1ca(benchmark::State& state) {
  const q1ca::Machine m = q1ca::build_m1();
  const q1ca::LanguageOracle* oracle = q1ca::find_oracle("l3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(q1ca::classify(m, *oracle, 4));
  }
}
BENCHMARK(BM_SweepKq1ca);

}  // namespace

BENCHMARK_MAIN();
