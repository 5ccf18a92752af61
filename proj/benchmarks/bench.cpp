#include <benchmark/benchmark.h>

#include <random>

#include "nativedil/estimator.hpp"
#include "nativedil/ring.hpp"
#include "nativedil/scheme.hpp"

namespace nd = nativedil;

namespace {

const nd::ParameterSet& sl2() { return nd::find_builtin("ours-sl2")->params; }

nd::RingElement random_element(std::mt19937_64& rng, const nd::RingContext& ctx) {
  std::uniform_int_distribution<nd::u64> d(0, ctx.q() - 1);
  nd::RingElement a(ctx.n());
  for (auto& c : a.coeffs()) c = d(rng);
  return a;
}

void BM_NttForward(benchmark::State& state) {
  const auto ctx = nd::make_ring(nd::kQ0, static_cast<nd::u64>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto a = random_element(rng, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(nd::ntt_forward(ctx, a));
}
BENCHMARK(BM_NttForward)->Arg(256)->Arg(512);

void BM_RingMul(benchmark::State& state) {
  const auto ctx = nd::make_ring(nd::kQ0, 512);
  std::mt19937_64 rng(2);
  const auto a = random_element(rng, ctx);
  const auto b = random_element(rng, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(nd::ring_mul(ctx, a, b));
}
BENCHMARK(BM_RingMul);

void BM_Keygen(benchmark::State& state) {
  const nd::Scheme scheme(sl2());
  nd::Seed seed{};
  for (auto _ : state) {
    ++seed[0];
    benchmark::DoNotOptimize(scheme.keygen(seed));
  }
}
BENCHMARK(BM_Keygen)->Unit(benchmark::kMillisecond);

void BM_Sign(benchmark::State& state) {
  const nd::Scheme scheme(sl2());
  const auto kp = scheme.keygen(nd::Seed{});
  nd::Bytes msg(32, 0);
  std::uint64_t attempts = 0;
  for (auto _ : state) {
    ++msg[0];
    attempts += scheme.sign(kp.sk, msg).attempts;
  }
  state.counters["attempts"] = benchmark::Counter(static_cast<double>(attempts), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Sign)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const nd::Scheme scheme(sl2());
  const auto kp = scheme.keygen(nd::Seed{});
  const nd::Bytes msg(32, 7);
  const auto sig = scheme.sign(kp.sk, msg).signature;
  for (auto _ : state) benchmark::DoNotOptimize(scheme.verify(kp.pk, msg, sig));
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

void BM_MlweCoreSvp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nd::mlwe_coresvp(13, 13, 2, nd::kQ0, 512));
}
BENCHMARK(BM_MlweCoreSvp)->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state) {
  nd::SearchSpace space;
  space.level = 2;
  for (auto _ : state) benchmark::DoNotOptimize(nd::search(space));
}
BENCHMARK(BM_Search)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
