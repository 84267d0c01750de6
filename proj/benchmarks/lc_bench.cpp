#include "asymptotica/lc_io.hpp"
#include "asymptotica/lc_roots.hpp"

#include <benchmark/benchmark.h>

namespace {

using asymptotica::lc::parse_lc;

void BM_LcMultiply(benchmark::State& state) {
  const auto a = parse_lc("rho^-1 + 2 + 3*rho^(1/2) - rho^2 + rho^(7/3)");
  const auto b = parse_lc("1 - rho + rho^(5/2) + 4*rho^3");
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_LcMultiply);

void BM_LcInverse(benchmark::State& state) {
  const auto a = parse_lc("1 + rho^(1/3) - 2*rho + rho^(5/2)");
  for (auto _ : state) benchmark::DoNotOptimize(inverse(a));
}
BENCHMARK(BM_LcInverse);

void BM_LcSqrt(benchmark::State& state) {
  const auto a = parse_lc("4 + rho + rho^(3/2)");
  for (auto _ : state) benchmark::DoNotOptimize(sqrt_nonneg(a));
}
BENCHMARK(BM_LcSqrt);

}  // namespace
