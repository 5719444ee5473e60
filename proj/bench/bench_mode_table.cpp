#include <benchmark/benchmark.h>

#include "metacasimir/mode_table.hpp"

using namespace metacasimir;

namespace {

ChessboardSpec asymmetric() {
  ChessboardSpec s;
  s.f_x = 0.75;
  s.f_y = 0.25;
  return s;
}

void BM_ModeTableSerial(benchmark::State& state) {
  const auto spec = asymmetric();
  const auto params = DispersionParams::defaults();
  const double H = state.range(0) * 1e-9;
  for (auto _ : state) {
    auto t = build_mode_table_serial(spec, H, params, QuadratureSpec{});
    benchmark::DoNotOptimize(t.entries.data());
  }
}

void BM_ModeTableParallel(benchmark::State& state) {
  const auto spec = asymmetric();
  const auto params = DispersionParams::defaults();
  const double H = state.range(0) * 1e-9;
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto t = build_mode_table_parallel(spec, H, params, QuadratureSpec{}, workers);
    benchmark::DoNotOptimize(t.entries.data());
  }
}

void BM_SingleMode(benchmark::State& state) {
  const auto spec = asymmetric();
  const auto params = DispersionParams::defaults();
  for (auto _ : state) {
    auto r = mode_integrals(spec, {1, 1}, 100e-9, params, QuadratureSpec{});
    benchmark::DoNotOptimize(r.energy.value);
  }
}

}  // namespace

BENCHMARK(BM_ModeTableSerial)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModeTableParallel)
    ->Args({100, 2})
    ->Args({100, 4})
    ->Args({100, 0})
    ->Args({300, 0})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_SingleMode)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
