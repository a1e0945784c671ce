#include <benchmark/benchmark.h>

#include "thermowit/serial.hpp"

using namespace thermowit;

namespace {

const RegionAxes kAxes{{0.05, 3.0, 30}, {0.0, 3.0, 30}};

void BM_RegionScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::region_scan(kAxes));
}

void BM_RegionScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(region_scan(kAxes));
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::separable_sweep(state.range(0), 8, Family::XXX, 1));
}

void BM_SweepParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(separable_sweep(state.range(0), 8, Family::XXX, 1));
}

void BM_ThermalDenseSerial(benchmark::State& state) {
  const auto spec = validate_spec(ModelSpec::xxx(static_cast<int>(state.range(0)), 1.0, 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(serial::thermal_observables_dense(spec, 0.5));
}

void BM_ThermalBlockedParallel(benchmark::State& state) {
  const auto spec = validate_spec(ModelSpec::xxx(static_cast<int>(state.range(0)), 1.0, 0.2));
  for (auto _ : state) {
    default_spectrum_cache().clear();
    benchmark::DoNotOptimize(thermal_observables(spec, 0.5));
  }
}

void BM_PairStateDenseSerial(benchmark::State& state) {
  const auto spec = validate_spec(ModelSpec::xx(static_cast<int>(state.range(0)), 1.0, 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(serial::reduced_pair_state_dense(spec, 0.5, 0, 1));
}

void BM_PairStateParallel(benchmark::State& state) {
  const auto spec = validate_spec(ModelSpec::xx(static_cast<int>(state.range(0)), 1.0, 0.4));
  const auto spectrum = default_spectrum_cache().get(spec);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_pair_state(*spectrum, 0.5, 0, 1));
}

}  // namespace

BENCHMARK(BM_RegionScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegionScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThermalDenseSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThermalBlockedParallel)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairStateDenseSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairStateParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
