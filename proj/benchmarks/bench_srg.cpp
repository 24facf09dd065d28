#include <benchmark/benchmark.h>

#include "srg/hyperbolic.hpp"
#include "srg/operators.hpp"
#include "srg/sampler.hpp"
#include "srg/signal.hpp"

using namespace srg;

static void BM_Spectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = make_input(Multisine{{1, 2, 3, 5}, 7, true}, 1.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(to_spectrum(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Spectrum)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

static void BM_ZOfPair(benchmark::State& state) {
  const Operator sat = StaticNL::saturation();
  const auto u1 = make_input(BiasedSinusoid{0.3, 2.0}, 1.0);
  const auto u2 = make_input(BiasedSinusoid{-0.5, 1.2}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(z_of_pair(sat, u1, u2, 10));
}
BENCHMARK(BM_ZOfPair);

static void BM_SampleStaticNl(benchmark::State& state) {
  const auto pairs = biased_sine_pairs(kDefaultBiasRange, kDefaultAmplitudeRange);
  for (auto _ : state) benchmark::DoNotOptimize(sample_static_nl(StaticNL::saturation(), pairs));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * pairs.size()));
}
BENCHMARK(BM_SampleStaticNl)->Unit(benchmark::kMillisecond);

static void BM_LtiRegion(benchmark::State& state) {
  const RationalTF g({1.0}, {1.0, 2.0, 5.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(lti_srg_region(g));
}
BENCHMARK(BM_LtiRegion)->Unit(benchmark::kMillisecond);

static void BM_SampleLti(benchmark::State& state) {
  const RationalTF g({1.0}, {1.0, 2.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(sample_lti(g));
}
BENCHMARK(BM_SampleLti)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
