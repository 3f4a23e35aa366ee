// Serial vs OpenMP bracket-table sweep.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "kepler/dynsym.hpp"

using namespace kepler;

namespace {

const GeneratorTable& table(int D, int n) {
  static const GeneratorTable t30 = GeneratorTable::build(3, 0);
  static const GeneratorTable t41 = GeneratorTable::build(4, 1);
  return D == 3 && n == 0 ? t30 : t41;
}

void sweep(benchmark::State& state, Execution execution) {
  const int D = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  SweepOptions opt;
  opt.execution = execution;
  opt.jobs = execution == Execution::Serial ? 1 : static_cast<int>(state.range(2));
  std::size_t failures = 0, pairs = 0;
  for (auto _ : state) {
    CheckReport r = verifyAlgebra(table(D, n), opt);
    failures += r.failures();
    pairs = r.checks.size();
  }
  state.counters["pairs"] = static_cast<double>(pairs);
  state.counters["failures"] = static_cast<double>(failures);
  state.counters["pairs/s"] = benchmark::Counter(static_cast<double>(pairs * state.iterations()),
                                                 benchmark::Counter::kIsRate);
}

void BM_SweepSerial(benchmark::State& state) { sweep(state, Execution::Serial); }
void BM_SweepParallel(benchmark::State& state) { sweep(state, Execution::Parallel); }

void parallelArgs(benchmark::internal::Benchmark* b) {
  const int maxJobs = omp_get_max_threads();
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}}) {
    for (int jobs : {1, 2, 4}) b->Args({D, n, jobs});
    if (maxJobs > 4) b->Args({D, n, maxJobs});
  }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Args({3, 0, 1})->Args({4, 1, 1})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Apply(parallelArgs)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
