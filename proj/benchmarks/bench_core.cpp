// Microbenchmarks for the hot paths: parsing, canonicalisation, transition
// derivation, behaviour computation, and CTMC exploration.
#include <benchmark/benchmark.h>

#include <random>

#include "brane/markov.hpp"
#include "brane/syntax.hpp"

using namespace brane;

namespace {

// A moderately nested system with engulf, merge and bud redexes.
const char* kBusy =
    "phago n.exo a | coexo b[pino c{exo a}[void]]"
    " o cophago n{coexo d}.exo c | coexo d[coexo a[exo a[void]]]"
    " o coexo a[exo a[void] o pino b{0}[void]]";

Term busy() { return parse_term(kBusy); }

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_term(kBusy));
}
BENCHMARK(BM_Parse);

void BM_Normalize(benchmark::State& state) {
  Term t = busy();
  for (auto _ : state) benchmark::DoNotOptimize(normalize(t));
}
BENCHMARK(BM_Normalize);

void BM_SysSteps(benchmark::State& state) {
  Canon c = normalize(busy());
  for (auto _ : state) benchmark::DoNotOptimize(sys_steps(c));
}
BENCHMARK(BM_SysSteps);

void BM_SosSys(benchmark::State& state) {
  Term t = busy();
  RateTable rt = RateTable::uniform(Rate(2));
  for (auto _ : state) benchmark::DoNotOptimize(sos_sys(t, rt));
}
BENCHMARK(BM_SosSys);

void BM_Explore(benchmark::State& state) {
  Term t = busy();
  RateTable rt = RateTable::uniform(Rate(2));
  for (auto _ : state) benchmark::DoNotOptimize(explore(t, rt));
}
BENCHMARK(BM_Explore);

void BM_SsaRun(benchmark::State& state) {
  Ctmc c = explore(busy(), RateTable::uniform(Rate(2)));
  uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ssa_run(c, seed++, 50.0));
}
BENCHMARK(BM_SsaRun);

}  // namespace

BENCHMARK_MAIN();
