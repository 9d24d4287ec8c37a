#include <benchmark/benchmark.h>

#include <cmath>

#include "fastlight/dispersion.hpp"
#include "fastlight/steady_state.hpp"
#include "fastlight/wavepacket.hpp"

using namespace fastlight;

namespace {

SchemeParams fig3_params() {
  SchemeParams p;
  p.scheme = Scheme::SingleProbeDoublet;
  p.gain_m1 = p.gain_m2 = 1.0;
  p.delta_cap = std::sqrt(3.0);
  p.cloud_length = 10.0;
  return p;
}

}  // namespace

static void BM_DispersionSweep(benchmark::State& state) {
  const auto p = fig3_params();
  const DeltaGrid grid{-5.0, 5.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(p, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DispersionSweep)->Arg(2001)->Arg(20001);

static void BM_SynthesizeFixed(benchmark::State& state) {
  const auto p = fig3_params();
  const SpectralPacket packet{0.1, -75.0};
  const auto z = default_z_axis(packet, 90.0);
  QuadratureOptions opts;
  opts.fixed_nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(z, 90.0, packet, p, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(z.size()));
}
BENCHMARK(BM_SynthesizeFixed)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SynthesizeAdaptive(benchmark::State& state) {
  SchemeParams p = fig3_params();
  if (state.range(0) == 1) {
    p.scheme = Scheme::TwoProbeDoubleDoublet;
    p.rabi_ratio_11 = p.rabi_ratio_21 = 1.0 / std::sqrt(2.0);
  }
  const SpectralPacket packet{0.1, -75.0};
  const auto z = default_z_axis(packet, 90.0);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(z, 90.0, packet, p));
}
BENCHMARK(BM_SynthesizeAdaptive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_OracleConvergence(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(single_pump_convergence({}));
}
BENCHMARK(BM_OracleConvergence);
BENCHMARK_MAIN();
