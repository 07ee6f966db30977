#include <benchmark/benchmark.h>

#include "qsl/bench.hpp"
#include "qsl/families.hpp"
#include "qsl/measures.hpp"
#include "qsl/random.hpp"
#include "qsl/tomography.hpp"

using namespace qsl;

static void BM_Tangle(benchmark::State& state) {
  Rng rng(1);
  const DensityMatrix rho = random_density(rng);
  for (auto _ : state) benchmark::DoNotOptimize(tangle(rho));
}
BENCHMARK(BM_Tangle);

static void BM_ChshMax(benchmark::State& state) {
  const DensityMatrix rho = werner_state(WernerParam(0.2));
  for (auto _ : state) benchmark::DoNotOptimize(chsh_max(rho));
}
BENCHMARK(BM_ChshMax);

static void BM_TemporalDecohere(benchmark::State& state) {
  TemporalDecohererSetting t;
  t.tau1 = 2.0;
  t.tau2 = 3.0;
  const DensityMatrix rho = DensityMatrix::from_ket(phi_plus());
  for (auto _ : state) benchmark::DoNotOptimize(temporal_decohere(rho, t));
}
BENCHMARK(BM_TemporalDecohere);

static void BM_LinearInversion(benchmark::State& state) {
  const CountVector c = expected_counts(mems_state(MemsParam(0.5)), standard_projectors(), 1e4);
  for (auto _ : state)
    benchmark::DoNotOptimize(linear_inversion(std::span<const double, kNumSettings>(c), standard_projectors()));
}
BENCHMARK(BM_LinearInversion);

static void BM_MleReconstruct(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  const CountRecord rec = sample_counts(expected_counts(werner_state(WernerParam(0.3)), standard_projectors(), n), 3, n);
  for (auto _ : state) benchmark::DoNotOptimize(mle_reconstruct(rec, standard_projectors()));
}
BENCHMARK(BM_MleReconstruct)->Arg(1000)->Arg(100000);

static void BM_MonteCarlo(benchmark::State& state) {
  UncertaintyConfig cfg;
  cfg.n_mc = 50;
  cfg.threads = 1;
  const DensityMatrix rho = DensityMatrix::from_ket(phi_plus());
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_uncertainty(rho, standard_projectors(), 2500.0, cfg));
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
