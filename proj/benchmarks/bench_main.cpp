#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "chi2qec/bounds.hpp"
#include "chi2qec/codes.hpp"
#include "chi2qec/errors.hpp"
#include "chi2qec/gates.hpp"
#include "chi2qec/syndromes.hpp"

namespace {

using namespace chi2qec;

void BM_BuildCode(benchmark::State& state) {
  const auto family = static_cast<CodeFamily>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_code(family, N));
}
BENCHMARK(BM_BuildCode)
    ->Args({static_cast<int>(CodeFamily::PCC), 3})
    ->Args({static_cast<int>(CodeFamily::EECC), 4})
    ->Args({static_cast<int>(CodeFamily::BC), 6});

void BM_Synthesize(benchmark::State& state) {
  const CodeSpec code = build_code(static_cast<CodeFamily>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(code));
}
BENCHMARK(BM_Synthesize)
    ->Args({static_cast<int>(CodeFamily::PCC), 2})
    ->Args({static_cast<int>(CodeFamily::EECC), 3})
    ->Args({static_cast<int>(CodeFamily::BC), 4})
    ->Unit(benchmark::kMillisecond);

void BM_KLCheckXi(benchmark::State& state) {
  const CodeSpec code = build_bc(static_cast<int>(state.range(0)));
  const int m = static_cast<int>(state.range(1));
  const auto errors = xi_set(m, enclosing_space(code, m));
  for (auto _ : state) benchmark::DoNotOptimize(kl_check(code, errors));
  state.counters["operators"] = static_cast<double>(errors.size());
}
BENCHMARK(BM_KLCheckXi)->Args({3, 1})->Args({4, 2})->Args({6, 3})->Unit(benchmark::kMillisecond);

void BM_ExpiHermitian(benchmark::State& state) {
  const auto n = state.range(0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(n, n);
  const Eigen::MatrixXcd g = a + a.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(expi_hermitian(g, 0.37));
}
BENCHMARK(BM_ExpiHermitian)->Arg(3)->Arg(9)->Arg(27);

void BM_VerifyGates(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_gates());
}
BENCHMARK(BM_VerifyGates)->Unit(benchmark::kMillisecond);

void BM_DecodeSyndrome(benchmark::State& state) {
  const CodeSpec code = build_bc(static_cast<int>(state.range(0)));
  const auto table = syndrome_table(code, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& row = table[i++ % table.size()];
    benchmark::DoNotOptimize(decode_syndrome(code, row.p, row.q, 2));
  }
}
BENCHMARK(BM_DecodeSyndrome)->Arg(3)->Arg(5);

void BM_RecoveryTrials(benchmark::State& state) {
  const CodeSpec code = build_pcc(3);
  for (auto _ : state) benchmark::DoNotOptimize(recovery_trials(code, "a_s1", static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_RecoveryTrials)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_MinN(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(min_n(q, 2, 1, 2));
}
BENCHMARK(BM_MinN)->Arg(3)->Arg(32);

void BM_RotationSweep(benchmark::State& state) {
  const int max_q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rotation_sweep(max_q, 2, 2));
}
BENCHMARK(BM_RotationSweep)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_TheoremChecks(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem_checks());
}
BENCHMARK(BM_TheoremChecks)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
