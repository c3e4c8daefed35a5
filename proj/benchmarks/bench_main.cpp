#include <benchmark/benchmark.h>

#include "hiring/eval.hpp"
#include "hiring/instances.hpp"
#include "hiring/lp.hpp"
#include "hiring/policies.hpp"
#include "hiring/rounding.hpp"

using namespace hiring;

namespace {

SeqInstance pool_instance(int n, int k, int T) {
  std::vector<double> p, v;
  for (const auto& c : sample_candidate_pool(n, PoolMode::negative_correlation, 7)) {
    p.push_back(c.accept_prob);
    v.push_back(c.value);
  }
  return SeqInstance(k, T, p, v);
}

void BM_LpSeq(benchmark::State& state) {
  const auto inst = pool_instance(static_cast<int>(state.range(0)), 10, 30);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp_seq(inst).objective);
}
BENCHMARK(BM_LpSeq)->Arg(100)->Arg(1000);

void BM_LpPtkGeneral(benchmark::State& state) {
  Rng rng(11);
  const auto inst = random_ptk_instance(rng, {.max_n = static_cast<int>(state.range(0)), .max_support = 4, .max_k = 3});
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp_ptk(inst).objective);
}
BENCHMARK(BM_LpPtkGeneral)->Arg(20)->Arg(60);

void BM_LpPar(benchmark::State& state) {
  const auto inst = tightness_parallel(static_cast<int>(state.range(0)), 20);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp_par(inst).objective);
}
BENCHMARK(BM_LpPar)->Arg(2)->Arg(5);

void BM_AdaptiveSeqDp(benchmark::State& state) {
  const auto inst = pool_instance(static_cast<int>(state.range(0)), 10, 50);
  for (auto _ : state) benchmark::DoNotOptimize(AdaptiveSeqDp(inst).value());
}
BENCHMARK(BM_AdaptiveSeqDp)->Arg(100);

void BM_CommittedOrderExact(benchmark::State& state) {
  const auto inst = tightness_probetopk(static_cast<int>(state.range(0)), 5);
  const auto pol = alg_ptk_derandomized(inst);
  for (auto _ : state) benchmark::DoNotOptimize(eval_committed_order_exact(inst, pol).mean);
}
BENCHMARK(BM_CommittedOrderExact)->Arg(1000);

void BM_SimulatePtk(benchmark::State& state) {
  const auto inst = tightness_probetopk(200, 5);
  const auto pol = alg_ptk_derandomized(inst);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_ptk(inst, pol, state.range(0), 1).mean);
}
BENCHMARK(BM_SimulatePtk)->Arg(1000);

void BM_SimExact(benchmark::State& state) {
  Rng rng(13);
  const auto inst = random_sim_instance(rng, {.max_n = static_cast<int>(state.range(0)), .max_k = 10});
  const auto offers = alg_sim(inst, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(eval_sim_exact(inst, offers).mean);
}
BENCHMARK(BM_SimExact)->Arg(100);

void BM_Gkps(benchmark::State& state) {
  const auto inst = tightness_parallel(3, static_cast<int>(state.range(0)));
  const auto lp = solve_lp_par(inst);
  Rng rng(17);
  for (auto _ : state) benchmark::DoNotOptimize(gkps_round(lp.y, rng));
}
BENCHMARK(BM_Gkps)->Arg(10)->Arg(100);

}  // namespace
BENCHMARK_MAIN();
