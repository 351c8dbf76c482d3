#include <benchmark/benchmark.h>

#include <vector>

#include "levyprem/density_inversion.hpp"
#include "levyprem/estimation.hpp"
#include "levyprem/levy_models.hpp"
#include "levyprem/premium.hpp"
#include "levyprem/special_functions.hpp"

using namespace levyprem;

namespace {

const NigParams kTable1(0.002351, 38.437308, -5.194172, 0.006590);
const NcigParams kTable2(195.903, 0.261, 0.08, 3.472);

void BM_BesselK1(benchmark::State& state) {
  double x = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_k1(x));
    x = x < 600.0 ? x * 1.01 : 1e-6;
  }
}
BENCHMARK(BM_BesselK1);

void BM_NigLogLikelihood(benchmark::State& state) {
  const std::vector<double> x = nig_sample(kTable1, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(nig_log_likelihood(kTable1, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NigLogLikelihood)->Arg(10'000)->Arg(100'000);

void BM_InvertNcig(benchmark::State& state) {
  const InversionGrid grid = default_grid(ncig_moments(kTable2), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_chf([](double u) { return ncig_chf(kTable2, u); }, grid));
  }
}
BENCHMARK(BM_InvertNcig)->Arg(1 << 12)->Arg(1 << 14)->Arg(1 << 16);

void BM_EcfObjective(benchmark::State& state) {
  const std::vector<double> z = ncig_sample(kTable2, static_cast<std::size_t>(state.range(0)), 2);
  const EmpiricalChf ecf(z, EcfObjectiveConfig::for_data(z));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecf_objective([](double u) { return ncig_chf(kTable2, u); }, ecf));
  }
}
BENCHMARK(BM_EcfObjective)->Arg(10'000);

void BM_EmpiricalChf(benchmark::State& state) {
  const std::vector<double> z = ncig_sample(kTable2, static_cast<std::size_t>(state.range(0)), 2);
  const EcfObjectiveConfig cfg = EcfObjectiveConfig::for_data(z);
  for (auto _ : state) benchmark::DoNotOptimize(EmpiricalChf(z, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalChf)->Arg(10'000)->Arg(100'000);

void BM_CalibrateNcig(benchmark::State& state) {
  const double target = premium_ncig(0.99, 8.9626, kTable2).log_premium;
  for (auto _ : state) benchmark::DoNotOptimize(calibrate_crra(target, 0.99, kTable2));
}
BENCHMARK(BM_CalibrateNcig);

}  // namespace

BENCHMARK_MAIN();
