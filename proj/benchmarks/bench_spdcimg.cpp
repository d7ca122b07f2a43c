#include <benchmark/benchmark.h>

#include <random>

#include "spdcimg/coincidence.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/pump.hpp"
#include "spdcimg/units.hpp"

using namespace spdcimg;

namespace {

const ExperimentGeometry kFig3{0.34, 0.07, 0.710625, 0.25};

PumpSpec fig3_pump() {
  PumpSpec p;
  p.object = Mask::double_slit(300e-6, 100e-6);
  return p;
}

Grid engine_grid(std::size_t n) { return Grid(n, std::sqrt(1.25 * 884e-9 * 0.41 / static_cast<double>(n))); }

ComplexVector random_row(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

}  // namespace

static void BM_ForwardSpectrum(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)), 1e-5);
  std::mt19937_64 rng(1);
  SampledField f(g, random_row(g.size(), rng), Domain::position, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(forward_spectrum(f));
}
BENCHMARK(BM_ForwardSpectrum)->RangeMultiplier(4)->Range(256, 16384);

static void BM_BuildArmKernel(benchmark::State& state) {
  const Grid g = engine_grid(static_cast<std::size_t>(state.range(0)));
  const ArmChain arm = twin_arm_chain(kFig3, fig3_pump().k_twin());
  const auto rho = linspace(-1e-3, 1e-3, 101);
  for (auto _ : state) benchmark::DoNotOptimize(build_arm_kernel(arm, rho, g));
}
BENCHMARK(BM_BuildArmKernel)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

template <bool Fast>
static void BM_Amplitude(benchmark::State& state) {
  const Grid g(static_cast<std::size_t>(state.range(0)), 1e-5);
  std::mt19937_64 rng(2);
  SampledField V(g, random_row(g.size(), rng), Domain::momentum, 1.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const std::size_t d = j > g.size() / 2 ? j - g.size() / 2 : g.size() / 2 - j;
    if (d >= g.size() / 4) V.values[j] = 0.0;
  }
  const auto a = random_row(g.size(), rng);
  const auto b = random_row(g.size(), rng);
  const auto w = SpectralWindow{}.weights(g);
  for (auto _ : state) {
    if constexpr (Fast) {
      benchmark::DoNotOptimize(coincidence_amplitude_fast(V, a, b, w));
    } else {
      benchmark::DoNotOptimize(coincidence_amplitude_direct(V, a, b, w));
    }
  }
}
BENCHMARK_TEMPLATE(BM_Amplitude, false)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_TEMPLATE(BM_Amplitude, true)->Arg(128)->Arg(512)->Arg(2048);

static void BM_Fig3Scan(benchmark::State& state) {
  const auto model = make_coincidence_model(fig3_pump(), kFig3, engine_grid(512));
  ScanConfig sc;
  sc.mode = state.range(0) == 0 ? ScanMode::fixed_signal : ScanMode::simultaneous_same;
  sc.positions = linspace(-1.2e-3, 1.2e-3, 101);
  sc.slit_width = 0.2e-3;
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(sc, model));
}
BENCHMARK(BM_Fig3Scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_PumpScan(benchmark::State& state) {
  const Grid g(4096, 12.5e-6);
  const auto pos = linspace(-0.6e-3, 0.6e-3, 101);
  const PumpSpec p = fig3_pump();
  for (auto _ : state) benchmark::DoNotOptimize(pump_intensity_scan(p, kFig3, g, pos, 0.2e-3));
}
BENCHMARK(BM_PumpScan)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
