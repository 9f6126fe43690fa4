#include <benchmark/benchmark.h>

#include <cmath>

#include "zetaburst/afe.hpp"
#include "zetaburst/exactvals.hpp"
#include "zetaburst/gamma.hpp"
#include "zetaburst/incgamma.hpp"
#include "zetaburst/oracles.hpp"

using namespace zetaburst;

namespace {

long bits(long digits) { return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 10; }

void BM_ZetaHalfAFE(benchmark::State& state) {
  LValueRequest req;
  req.s = Rational(1, 2);
  req.prec = bits(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(afe_eval(req));
}

void BM_ZetaHalfEM(benchmark::State& state) {
  const long p = bits(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hurwitz_em(Rational(1, 2), Rational(1), p));
}

void BM_L23(benchmark::State& state) {
  LValueRequest req;
  req.chi = DirichletChar::parse("23.19");
  req.s = Rational(4, 3);
  req.prec = bits(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(afe_eval(req));
}

void BM_IncGamma(benchmark::State& state) {
  const long p = state.range(0);
  Ball z = Ball::from_rational(Rational(314159, 100000), p + 64);
  for (auto _ : state) benchmark::DoNotOptimize(incgamma_bitburst(Rational(1, 4), z, p));
}

void BM_EulerGamma(benchmark::State& state) {
  // cached after the first call, so vary the precision per iteration
  mpfr_prec_t p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(euler_gamma(p++));
}

void BM_Bernoulli(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bernoulli_exact(state.range(0)));
}

void BM_EulerNumber(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(euler_exact(state.range(0)));
}

}  // namespace

BENCHMARK(BM_ZetaHalfAFE)->Arg(100)->Arg(1000)->Arg(3162)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZetaHalfEM)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_L23)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IncGamma)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EulerGamma)->Arg(1024)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bernoulli)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EulerNumber)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
