#include "apery/asymptotics.hpp"
#include "apery/exact.hpp"
#include "apery/measures.hpp"
#include "apery/saddle.hpp"
#include "apery/zeros.hpp"

#include <benchmark/benchmark.h>

#include <complex>

namespace {

using cd = std::complex<double>;

void BM_SequenceRecurrence(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apery::exact::apery_sequence_rec(n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SequenceRecurrence)->RangeMultiplier(4)->Range(64, 4096)->Complexity()->Unit(benchmark::kMillisecond);

void BM_SequenceDirectSum(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apery::exact::apery_sequence_sum(n));
}
BENCHMARK(BM_SequenceDirectSum)->RangeMultiplier(2)->Range(50, 200)->Unit(benchmark::kMillisecond);

void BM_EvalCertifiedNegativeAxis(benchmark::State& state) {
  const auto p = apery::exact::apery_poly(static_cast<unsigned>(state.range(0)));
  const apery::exact::RationalComplex z(mpq_class(-1, 8));
  for (auto _ : state) benchmark::DoNotOptimize(apery::exact::eval_certified(p, z, 1e-12));
}
BENCHMARK(BM_EvalCertifiedNegativeAxis)->RangeMultiplier(4)->Range(50, 3200)->Unit(benchmark::kMicrosecond);

void BM_EvalCertifiedComplex(benchmark::State& state) {
  const auto p = apery::exact::apery_poly(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apery::exact::eval_certified(p, cd(1, 1), 1e-12));
}
BENCHMARK(BM_EvalCertifiedComplex)->RangeMultiplier(4)->Range(50, 3200)->Unit(benchmark::kMicrosecond);

void BM_LeadingTerm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(apery::asymptotics::leading_term(1000, cd(0.3, 2)));
}
BENCHMARK(BM_LeadingTerm);

void BM_SaddleEstimate(benchmark::State& state) {
  const auto prob = apery::saddle::apery_saddle_problem(cd(1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(apery::saddle::saddle_estimate(prob, 100));
}
BENCHMARK(BM_SaddleEstimate)->Unit(benchmark::kMicrosecond);

void BM_DirectIntegral(benchmark::State& state) {
  const auto prob = apery::saddle::apery_saddle_problem(cd(1, 1));
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apery::saddle::direct_integral(prob, 10, m));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(8 * m * m * m));
}
BENCHMARK(BM_DirectIntegral)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ModulusMax(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apery::saddle::verify_modulus_max(cd(2, 1), m));
}
BENCHMARK(BM_ModulusMax)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_IsolateZeros(benchmark::State& state) {
  const auto p = apery::exact::apery_poly(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apery::zeros::isolate_zeros(p));
}
BENCHMARK(BM_IsolateZeros)->RangeMultiplier(2)->Range(25, 200)->Unit(benchmark::kMillisecond);

void BM_NuCdf(benchmark::State& state) {
  double y = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apery::zeros::nu_cdf(y));
    y = y > 0.98 ? -0.99 : y + 0.01;
  }
}
BENCHMARK(BM_NuCdf)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
