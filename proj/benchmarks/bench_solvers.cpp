#include <benchmark/benchmark.h>

#include "dqlab/builtin.hpp"
#include "dqlab/constructions.hpp"
#include "dqlab/solvers.hpp"
#include "dqlab/stats.hpp"

namespace {

using namespace dqlab;

void BM_DiscountedScore(benchmark::State& state) {
  BoolFn f = BoolFn::product(resolve_function("maj3"), (int)state.range(0));
  Dist mu = Dist::product(Dist::uniform(resolve_function("maj3")),
                          (int)state.range(0));
  for (auto _ : state) {
    auto r = discounted_score(f, mu, 0.7, ScoreKind::success);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_DiscountedScore)->Arg(1)->Arg(2)->Arg(3);

void BM_ParetoFront(benchmark::State& state) {
  BoolFn f = BoolFn::product(resolve_function("xor2"), (int)state.range(0));
  Dist mu = Dist::product(Dist::uniform(resolve_function("xor2")),
                          (int)state.range(0));
  for (auto _ : state) {
    auto front = pareto_score_scost(f, mu, ScoreKind::success);
    benchmark::DoNotOptimize(front.pts.size());
  }
}
BENCHMARK(BM_ParetoFront)->Arg(1)->Arg(2)->Arg(3);

void BM_WorstCaseR(benchmark::State& state) {
  BoolFn f = resolve_function(state.range(0) == 2 ? "xor2" : "maj3");
  for (auto _ : state) {
    auto r = worst_case_R(f, 0.75);
    benchmark::DoNotOptimize(r.depth);
  }
}
BENCHMARK(BM_WorstCaseR)->Arg(2)->Arg(3);

void BM_Stats(benchmark::State& state) {
  BoolFn f = resolve_function("maj3");
  Dist mu = resolve_dist("biased", f);
  auto front = pareto_score_cost(f, mu, ScoreKind::success);
  auto alg = min_cost_at_score(front, 0.9).witness;
  for (auto _ : state) {
    auto st = stats(alg, f, mu, ScoreKind::success, 0.5);
    benchmark::DoNotOptimize(st.scost);
  }
}
BENCHMARK(BM_Stats);

void BM_SchapireBoost(benchmark::State& state) {
  BoolFn f = resolve_function("and2");
  Dist mu = Dist::uniform(f);
  for (auto _ : state) {
    auto rep = schapire_boost(f, mu, 0.75);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(BM_SchapireBoost);

}  // namespace

BENCHMARK_MAIN();
