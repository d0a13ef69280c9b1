#include <benchmark/benchmark.h>

#include <complex>

#include "blochwave/geometry.hpp"
#include "blochwave/interband.hpp"
#include "blochwave/intraband.hpp"
#include "blochwave/pulse.hpp"
#include "blochwave/special_functions.hpp"

using namespace blochwave;

static void BM_BesselJ0(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 0.1;
    if (x > 50.0) x = 0.0;
    benchmark::DoNotOptimize(bessel_j0(x));
  }
}
BENCHMARK(BM_BesselJ0);

static void BM_AiryAi(benchmark::State& state) {
  double x = -10.0;
  for (auto _ : state) {
    x += 0.05;
    if (x > 4.0) x = -10.0;
    benchmark::DoNotOptimize(airy_ai(x));
  }
}
BENCHMARK(BM_AiryAi);

static void BM_Trajectory(benchmark::State& state) {
  const TightBinding band{4.9, {0.0, -1.65, 0.2}};
  const auto pulse = PulseSpec::monochromatic_cycles(0.5, 1.65, 8.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajectory(BandDispersion{band}, 0.1, pulse,
                                        static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Trajectory)->Arg(512)->Arg(2048);

static void BM_HarmonicSpectrum(benchmark::State& state) {
  const TightBinding band{4.9, {0.0, -1.0, 0.2, -0.05}};
  const auto pulse =
      PulseSpec::monochromatic_cycles(1.0, 1.65, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hhg_spectrum(BandDispersion{band}, 0.0, pulse));
  }
}
BENCHMARK(BM_HarmonicSpectrum)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_TwoBandPropagation(benchmark::State& state) {
  TwoBandModel model = TwoBandModel::kane(9.0, 0.5, 4.9);
  model.xi_cv = [](double) { return std::complex<double>(0.37, 0.0); };
  const auto pulse =
      PulseSpec::flat_top_cycles(1.0, 1.8, static_cast<double>(state.range(0)), 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_two_band(model, {0.1}, pulse, {1e-12, 1e-12}));
  }
}
BENCHMARK(BM_TwoBandPropagation)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_ChernNumber(benchmark::State& state) {
  BlochModel2D model{[](double kx, double ky) {
    return std::array<double, 3>{std::sin(kx), std::sin(ky),
                                 -1.0 + std::cos(kx) + std::cos(ky)};
  }};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chern_and_curvature(model, 0, n, n));
  }
}
BENCHMARK(BM_ChernNumber)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
