#include "asymptotica/pairing.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace asymptotica;

void BM_PairingHeavisideDelta(benchmark::State& state) {
  const auto g = gfunc::parse("H * delta");
  const Rational eps(1, 1 << state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pairing::pairing(g, pairing::default_tau(), eps, 3));
}
BENCHMARK(BM_PairingHeavisideDelta)->Arg(4)->Arg(8)->Arg(12);

void BM_PairingSmooth(benchmark::State& state) {
  const auto g = gfunc::parse("smooth(sin(x)) * H");
  for (auto _ : state) benchmark::DoNotOptimize(pairing::pairing(g, pairing::default_tau(), Rational(1, 64), 3));
}
BENCHMARK(BM_PairingSmooth);

}  // namespace
