#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include <conewalk/conewalk.hpp>

using namespace conewalk;

static void BM_ExactTailQuarterPlane(benchmark::State& state) {
  const StepDistribution walk = srw2d();
  const Cone cone = Cone::quarter_plane();
  ExactOptions o;
  o.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(exact_tail(walk, cone, static_cast<int>(state.range(0)), o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactTailQuarterPlane)->Args({100, 1})->Args({200, 1})->Args({400, 1})->Args({400, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_ExactTailTruncatedOctant(benchmark::State& state) {
  const StepDistribution walk = srw2d();
  const Cone cone = Cone::octant();
  ExactOptions o;
  o.truncation = 1e-16;
  for (auto _ : state) benchmark::DoNotOptimize(exact_tail(walk, cone, static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_ExactTailTruncatedOctant)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_SplittingOctant(benchmark::State& state) {
  const StepDistribution walk = srw2d();
  const Cone cone = Cone::octant();
  const auto schedule = default_schedule(200);
  for (auto _ : state) {
    benchmark::DoNotOptimize(splitting_sample(walk, cone, 200, static_cast<int>(state.range(0)), schedule,
                                              {1, static_cast<unsigned>(state.range(1))}));
  }
}
BENCHMARK(BM_SplittingOctant)->Args({1000, 1})->Args({10000, 1})->Args({10000, 4})->Unit(benchmark::kMillisecond);

static void BM_RejectionQuarterPlane(benchmark::State& state) {
  const StepDistribution walk = srw2d();
  const Cone cone = Cone::quarter_plane();
  for (auto _ : state) benchmark::DoNotOptimize(rejection_sample(walk, cone, 100, static_cast<int>(state.range(0)), {1, 1}));
}
BENCHMARK(BM_RejectionQuarterPlane)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_KsOneSample(benchmark::State& state) {
  const auto law = MeanderEndpointLaw::from_alpha(1.0);
  RngStream rng(3);
  std::vector<double> r(static_cast<std::size_t>(state.range(0)));
  for (double& x : r) x = law.sample(rng).r;
  for (auto _ : state) benchmark::DoNotOptimize(ks_statistic(r, [&](double v) { return law.radial_cdf(v); }));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KsOneSample)->Arg(10000)->Arg(100000);

static void BM_MeanderSample(benchmark::State& state) {
  const auto law = MeanderEndpointLaw::from_alpha(2.0);
  RngStream rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(law.sample(rng));
}
BENCHMARK(BM_MeanderSample);
BENCHMARK_MAIN();
