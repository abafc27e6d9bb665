#include <benchmark/benchmark.h>

#include "normetry/checks.hpp"
#include "normetry/falsify.hpp"
#include "normetry/linalg.hpp"
#include "normetry/norms.hpp"
#include "normetry/rand.hpp"

using namespace normetry;

static void BM_Eigh(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HermitianMatrix h(generate({GenKind::Hermitian, n, 1, 1.0}));
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_Eigh)->RangeMultiplier(2)->Range(2, 32);

static void BM_Svd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = generate({GenKind::GeneralComplex, n, 2, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(svd(x));
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(2, 32);

static void BM_Polar(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = generate({GenKind::GeneralComplex, n, 3, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(polar(x));
}
BENCHMARK(BM_Polar)->Arg(4)->Arg(8)->Arg(16);

static void BM_DominanceVerdict(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = generate({GenKind::GeneralComplex, n, 4, 1.0});
  const Matrix y = generate({GenKind::GeneralComplex, n, 5, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(dominance_verdict(x, y));
}
BENCHMARK(BM_DominanceVerdict)->Arg(4)->Arg(8)->Arg(16);

static void BM_CheckThm11(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<HermitianMatrix> ops{HermitianMatrix(generate({GenKind::PSD, n, 6, 1.0})),
                                         HermitianMatrix(generate({GenKind::PSD, n, 7, 1.0}))};
  const ScalarFn f = ScalarFn::sqrt();
  for (auto _ : state) benchmark::DoNotOptimize(check_thm_1_1(f, ops));
}
BENCHMARK(BM_CheckThm11)->Arg(4)->Arg(8);

static void BM_Campaign(benchmark::State& state) {
  CampaignConfig cfg;
  cfg.check = static_cast<CheckId>(state.range(0));
  cfg.trials = 10;
  cfg.dims = {4};
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign(cfg));
  state.SetLabel(to_string(cfg.check));
}
BENCHMARK(BM_Campaign)->DenseRange(0, 15)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
