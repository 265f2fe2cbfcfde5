#include <benchmark/benchmark.h>

#include "jpmono/cyclo.hpp"
#include "jpmono/grpengine.hpp"
#include "jpmono/jprep.hpp"

using namespace jpmono;

static JPTuple<Fq> sample_tuple(const Fq &K, int n, uint64_t seed) {
  Rng rng(seed);
  auto par = random_valid_params(K, n, rng);
  JPOptions opt;
  opt.seed = seed;
  return jp_construct(K, *par, opt);
}

static void BM_MatMul(benchmark::State &state) {
  Fq K(3, 2);
  int n = (int)state.range(0);
  auto t = sample_tuple(K, n, 1);
  const auto &a = t.gens[0], &b = t.gens[1];
  for (auto _ : state) benchmark::DoNotOptimize(mat_mul(K, a, b));
}
BENCHMARK(BM_MatMul)->Arg(4)->Arg(6);

static void BM_ConstructVerify(benchmark::State &state) {
  Fq K(5, 2);
  int n = (int)state.range(0);
  uint64_t seed = 0;
  for (auto _ : state) {
    auto t = sample_tuple(K, n, ++seed);
    benchmark::DoNotOptimize(jp_verify(K, t, seed).all_ok());
  }
}
BENCHMARK(BM_ConstructVerify)->Arg(3)->Arg(5);

static void BM_SubsetSpectrum(benchmark::State &state) {
  Fq K(7);
  auto t = sample_tuple(K, 5, 2);
  std::vector<int> S = {1, 3, 5};
  for (auto _ : state) benchmark::DoNotOptimize(subset_spectrum(K, t, S).matches_expected);
}
BENCHMARK(BM_SubsetSpectrum);

static void BM_BsgsSp4(benchmark::State &state) {
  WeightVector w{2, {1, 1, 1, 1, 1, 1}};
  auto sp = params_from_weights(w);
  auto rd = split_prime(2, 3)[0];
  Fq K = residue_field(rd);
  auto red = reduce_params(K, sp, rd, 0);
  auto t = jp_construct(K, red.par);
  for (auto _ : state) {
    auto b = bsgs_build(K, t.gens);
    benchmark::DoNotOptimize(b.order());
  }
}
BENCHMARK(BM_BsgsSp4);

BENCHMARK_MAIN();
