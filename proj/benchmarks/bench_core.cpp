#include <benchmark/benchmark.h>

#include <cstdint>

#include "cellscale/bounds.hpp"
#include "cellscale/channel.hpp"
#include "cellscale/geometry.hpp"
#include "cellscale/params.hpp"
#include "cellscale/protocols.hpp"

namespace {

using namespace cellscale;

NetworkRealization make_network(std::uint64_t n) {
  const ScalingExponents e;
  const ModelConstants c;
  return build_realization(n, e, c, 42);
}

void BM_build_realization(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  const ScalingExponents e;
  const ModelConstants c;
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_realization(n, e, c, seed++));
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_build_realization)->Range(1 << 10, 1 << 16)->Complexity();

void BM_cutset_dl(benchmark::State& state) {
  const NetworkRealization real = make_network(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cutset_dl(real));
}
BENCHMARK(BM_cutset_dl)->Range(1 << 10, 1 << 14);

void BM_cutset_ul(benchmark::State& state) {
  const NetworkRealization real = make_network(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cutset_ul(real));
}
BENCHMARK(BM_cutset_ul)->Range(1 << 10, 1 << 14);

void BM_ish_rates(benchmark::State& state) {
  const NetworkRealization real = make_network(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ish_rates(real, Direction::DL));
}
BENCHMARK(BM_ish_rates)->Range(1 << 10, 1 << 14);

void BM_imh_rates(benchmark::State& state) {
  const NetworkRealization real = make_network(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        imh_rates(real, Direction::DL, LoadMode::paper_faithful));
}
BENCHMARK(BM_imh_rates)->Range(1 << 10, 1 << 14);

void BM_irh_rates(benchmark::State& state) {
  const NetworkRealization real = make_network(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(irh_rates(real, Direction::UL));
}
BENCHMARK(BM_irh_rates)->Range(1 << 10, 1 << 14);

void BM_hurwitz_zeta(benchmark::State& state) {
  double s = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hurwitz_zeta(s, 1.0 / 3.0));
    s = (s == 2.0) ? 4.0 : 2.0;
  }
}
BENCHMARK(BM_hurwitz_zeta);

}  // namespace

BENCHMARK_MAIN();
