#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hoopstat/analyses.hpp"
#include "hoopstat/dataset.hpp"
#include "hoopstat/linear_fit.hpp"
#include "hoopstat/numerics.hpp"
#include "hoopstat/stats_tests.hpp"

namespace {

using namespace hoopstat;

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

const data::Dataset& bundled() {
  static const data::Dataset ds = data::load_dataset(HOOPSTAT_BENCH_DATA_DIR);
  return ds;
}

void BM_SignedRankNull(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numerics::signed_rank_null_cdf(n, n * (n + 1) / 8.0));
}
BENCHMARK(BM_SignedRankNull)->Arg(10)->Arg(25)->Arg(30);

void BM_MannWhitneyNull(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numerics::mann_whitney_null_cdf(n, n, n * n / 3.0));
}
BENCHMARK(BM_MannWhitneyNull)->Arg(6)->Arg(20);

void BM_SpearmanTail(benchmark::State& state) {
  const int n = int(state.range(0));
  const double s = double(n * n * n - n) / 8.0;
  for (auto _ : state) benchmark::DoNotOptimize(numerics::spearman_tail_prob(n, s));
}
BENCHMARK(BM_SpearmanTail)->Arg(7)->Arg(9)->Arg(30);

void BM_Wilcoxon(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto x = noise(n, 1), y = noise(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(stats::wilcoxon_signed_rank(x, y));
}
BENCHMARK(BM_Wilcoxon)->Arg(20)->Arg(64)->Arg(1000);

void BM_OlsFit(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto cols = noise(n * 10, 3), y = noise(n, 4);
  Matrix design(n, 10);
  for (std::size_t r = 0; r < n; ++r) {
    design(r, 0) = 1.0;
    for (std::size_t c = 1; c < 10; ++c) design(r, c) = cols[r * 10 + c];
  }
  for (auto _ : state) benchmark::DoNotOptimize(numerics::ols_fit(design, y));
}
BENCHMARK(BM_OlsFit)->Arg(62)->Arg(500);

void BM_ZivotAndrews(benchmark::State& state) {
  auto y = noise(std::size_t(state.range(0)), 5);
  for (std::size_t t = 1; t < y.size(); ++t) y[t] += y[t - 1];
  for (auto _ : state) benchmark::DoNotOptimize(stats::zivot_andrews(y));
}
BENCHMARK(BM_ZivotAndrews)->Arg(62)->Arg(200);

void BM_LoadDataset(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(data::load_dataset(HOOPSTAT_BENCH_DATA_DIR));
}
BENCHMARK(BM_LoadDataset);

void BM_MultinomialMonteCarlo(benchmark::State& state) {
  analyses::FinalFourOptions o;
  o.monte_carlo.iterations = std::uint64_t(state.range(0));
  o.monte_carlo.workers = unsigned(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(analyses::analyze_final_four_randomness(bundled(), o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
// Work runs on jthread workers, so CPU time on the calling thread means nothing.
BENCHMARK(BM_MultinomialMonteCarlo)->Args({10000, 1})->Args({100000, 1})->Args({100000, 2})
    ->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_Pluralism(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(analyses::analyze_pluralism(bundled()));
}
BENCHMARK(BM_Pluralism)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
