#include <benchmark/benchmark.h>

#include "bsvhhg/hhg.hpp"
#include "bsvhhg/ionization.hpp"
#include "bsvhhg/units.hpp"

using namespace bsv;

namespace {

const field::DriverPulse& pulse() {
  static const field::DriverPulse p({});
  return p;
}

double amp(double intensity) { return units::field_v_per_cm_from_intensity_w_cm2(intensity); }

void BM_AdkRate(benchmark::State& state) {
  const auto ar = ionization::AtomSpecies::argon();
  double e = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ionization::adk_rate(ar, e));
    e = e < 0.2 ? e + 1e-4 : 0.01;
  }
}
BENCHMARK(BM_AdkRate);

void BM_FinalYield(benchmark::State& state) {
  const auto ar = ionization::AtomSpecies::argon();
  for (auto _ : state) benchmark::DoNotOptimize(ionization::final_yield(pulse(), amp(1.5e14), ar));
}
BENCHMARK(BM_FinalYield)->Unit(benchmark::kMicrosecond);

void BM_EnsembleYield(benchmark::State& state) {
  const auto ar = ionization::AtomSpecies::argon();
  const auto dist = field::FieldStateDistribution::bsv_from_intensity(1.5e14, 1e-14, 800.0);
  const auto ens = field::build_ensemble(dist, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ionization::ensemble_yield(ens, pulse(), ar));
}
BENCHMARK(BM_EnsembleYield)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SfaDipole(benchmark::State& state) {
  const auto ar = ionization::AtomSpecies::argon();
  const double intensity = static_cast<double>(state.range(0)) * 1e13;
  for (auto _ : state) benchmark::DoNotOptimize(hhg::sfa_dipole(pulse(), amp(intensity), ar));
}
BENCHMARK(BM_SfaDipole)->Arg(5)->Arg(15)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  const auto d = hhg::sfa_dipole(pulse(), amp(1.5e14), ionization::AtomSpecies::argon());
  for (auto _ : state) benchmark::DoNotOptimize(hhg::spectrum(d));
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
