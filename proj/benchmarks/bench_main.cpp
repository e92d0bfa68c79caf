#include <benchmark/benchmark.h>

#include "gl2lab/lfunc.hpp"
#include "gl2lab/locgl2.hpp"
#include "gl2lab/mellin.hpp"
#include "gl2lab/oracle.hpp"

using namespace gl2lab;

namespace {

sym::EvalPoint point(std::int64_t q) {
  sym::EvalPoint at;
  at.q = q;
  at.s = {2.0, 0.5};
  at.s0 = {0.1, 1.0};
  at.s1 = {0.05, -0.4};
  at.s2 = {-0.1, 0.7};
  return at;
}

void BM_TransitionCoefficient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(local::c_coeff(n, n / 2));
}
BENCHMARK(BM_TransitionCoefficient)->DenseRange(2, 6, 2);

void BM_SymbolicProduct(benchmark::State& state) {
  const auto a = local::c_coeff(4, 2), b = local::c_coeff(4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SymbolicProduct);

void BM_Substitute(benchmark::State& state) {
  const auto z = local::zeta_ratio(2).value;
  const auto at = point(7);
  for (auto _ : state) benchmark::DoNotOptimize(sym::substitute(z, at));
}
BENCHMARK(BM_Substitute);

void BM_OracleZetaRatio(benchmark::State& state) {
  const auto at = point(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::zeta_ratio_by_summation(1, at));
}
BENCHMARK(BM_OracleZetaRatio)->Arg(2)->Arg(11);

void BM_MellinH0(benchmark::State& state) {
  const lfunc::cplx s(-0.5, 12.0);
  for (auto _ : state) benchmark::DoNotOptimize(mellin::mellin_h0(s));
}
BENCHMARK(BM_MellinH0);

void BM_CentralValue(benchmark::State& state) {
  const auto chars = lfunc::enumerate_characters(state.range(0));
  lfunc::l_central(chars[0]);  // kernel tables and weights are built on first use
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lfunc::l_central(chars[i++ % chars.size()]));
}
BENCHMARK(BM_CentralValue)->Arg(101)->Arg(2999);

void BM_HurwitzOracle(benchmark::State& state) {
  const auto chi = lfunc::enumerate_characters(state.range(0)).at(1);
  for (auto _ : state) benchmark::DoNotOptimize(lfunc::l_oracle_hurwitz(chi, 0.5));
}
BENCHMARK(BM_HurwitzOracle)->Arg(101)->Arg(2999);

void BM_ScanModulus(benchmark::State& state) {
  const auto q = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(lfunc::scan(q, q, 1));
}
BENCHMARK(BM_ScanModulus)->Arg(1009)->Arg(2999)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
