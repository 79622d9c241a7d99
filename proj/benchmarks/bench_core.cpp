#include <benchmark/benchmark.h>

#include "tli/fringe.hpp"
#include "tli/oracle.hpp"
#include "tli/special_functions.hpp"
#include "tli/witness.hpp"

namespace {

void BM_BesselSequence(benchmark::State& state) {
  const double n0 = static_cast<double>(state.range(0));
  const tli::Complex z{-n0 / 4.0, n0 / 4.0};
  const int order = static_cast<int>(n0) + 20;
  for (auto _ : state) benchmark::DoNotOptimize(tli::special::exp_scaled_bessel_i_sequence(z, order));
}
BENCHMARK(BM_BesselSequence)->Arg(2)->Arg(50)->Arg(200);

void BM_GratingCoefficients(benchmark::State& state) {
  const double n0 = static_cast<double>(state.range(0));
  const auto g = tli::balanced_two_colour(n0, n0, 1.0, 1.0, tli::NodeParity::plus);
  for (auto _ : state) benchmark::DoNotOptimize(tli::fourier_coefficients(g));
}
BENCHMARK(BM_GratingCoefficients)->Arg(10)->Arg(50)->Arg(200);

void BM_FringeSpectrum(benchmark::State& state) {
  const double n0 = static_cast<double>(state.range(0));
  const tli::WitnessModel m(tli::WitnessSetup::symmetric(n0, 2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tli::fringe_spectrum(m.first_intensity(), m.second_amplitude(tli::SecondSetting::plus), 1.37));
  }
}
BENCHMARK(BM_FringeSpectrum)->Arg(10)->Arg(50)->Arg(200);

void BM_MaskedIntensity(benchmark::State& state) {
  const double n0 = static_cast<double>(state.range(0));
  const tli::WitnessModel m(tli::WitnessSetup::symmetric(n0, 2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tli::masked_intensity(m.first_intensity(), m.second_amplitude(tli::SecondSetting::plus),
                                                   m.third_intensity(), 1.37));
  }
}
BENCHMARK(BM_MaskedIntensity)->Arg(10)->Arg(50)->Arg(200);

void BM_WitnessPoint(benchmark::State& state) {
  const tli::WitnessModel m(tli::WitnessSetup::symmetric(static_cast<double>(state.range(0)), 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(m.evaluate(0.99));
}
BENCHMARK(BM_WitnessPoint)->Arg(10)->Arg(50);

void BM_Propagate(benchmark::State& state) {
  tli::oracle::Propagator p(static_cast<std::size_t>(state.range(0)));
  auto field = tli::oracle::FieldGrid::plane_wave(p.size(), 0.3);
  field.apply(tli::GratingSpec::one_colour(50.0, 1.0));
  for (auto _ : state) {
    p.propagate(field, 0.37);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Propagate)->Arg(512)->Arg(2048);

void BM_OraclePattern(benchmark::State& state) {
  const auto s = tli::WitnessSetup::symmetric(static_cast<double>(state.range(0)), 2.0);
  const tli::InterferometerConfig c{s.first_grating(), s.second_grating(tli::SecondSetting::plus), s.third_grating(),
                                    true, 1.7};
  for (auto _ : state) benchmark::DoNotOptimize(tli::oracle::incoherent_pattern(c));
}
BENCHMARK(BM_OraclePattern)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
