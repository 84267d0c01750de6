#include "asymptotica/bump.hpp"
#include "asymptotica/mollifier.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace asymptotica;

void BM_BumpEval(benchmark::State& state) {
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bump0(x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
}
BENCHMARK(BM_BumpEval);

void BM_BumpAntiderivative(benchmark::State& state) {
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bump0_antiderivative(x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
}
BENCHMARK(BM_BumpAntiderivative);

void BM_MollifierEval(benchmark::State& state) {
  const auto phi = mollifier::moment_killer(static_cast<int>(state.range(0)), Rational(9 * state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mollifier::eval(phi, {0.01}));
}
BENCHMARK(BM_MollifierEval)->DenseRange(1, 4);

}  // namespace
