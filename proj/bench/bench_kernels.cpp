// Serial reference vs OpenMP kernel, one pair per kernel.
// SHADOWLAB_THREADS caps the worker count.

#include <benchmark/benchmark.h>

#include "shadowlab/constructions.hpp"
#include "shadowlab/extremal.hpp"
#include "shadowlab/forbidden.hpp"
#include "shadowlab/parallel.hpp"
#include "shadowlab/stability.hpp"

using namespace shadowlab;

namespace {

// Cancellative and dense, so the scan runs to completion.
const Hypergraph& triple_input() {
  static const Hypergraph h = turan(24, 3, 3).graph;
  return h;
}

const Hypergraph& clique_input() {
  static const Hypergraph h = turan(36, 4, 3).graph;
  return h;
}

const Hypergraph& fit_input() {
  static const Hypergraph h = perturb(turan(12, 3, 3).graph, 3, 4, 3).graph;
  return h;
}

void BM_TripleScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_cancellative_violation_reference(triple_input()));
}
void BM_TripleScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_cancellative_violation(triple_input()));
}

void BM_CliqueSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_clique_expansion_reference(clique_input(), 4));
}
void BM_CliqueParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_clique_expansion(clique_input(), 4));
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) {
    std::size_t best = 0;
    sweep_labeled(6, 3, Family::cancellative(), [&](const MaskList& m) { best = std::max(best, m.size()); });
    benchmark::DoNotOptimize(best);
  }
}
void BM_SweepParallel(benchmark::State& state) {
  for (auto _ : state) {
    const auto best = sweep_labeled_reduce(
        6, 3, Family::cancellative(), std::size_t{0},
        [](std::size_t& acc, const MaskList& m) { acc = std::max(acc, m.size()); },
        [](std::size_t& into, std::size_t&& from) { into = std::max(into, from); });
    benchmark::DoNotOptimize(best);
  }
}

void BM_PartitionFit(benchmark::State& state) {
  FitOptions o;
  o.mode = FitMode::exact;
  o.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(partition_fit(fit_input(), 3, 12, o).removed);
}

void BM_OrderlyClasses(benchmark::State& state) {
  EnumOptions o;
  o.engine = Engine::orderly;
  o.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(free_classes(7, 3, Family::cancellative(), o).size());
}

}  // namespace

BENCHMARK(BM_TripleScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TripleScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CliqueSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CliqueParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartitionFit)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrderlyClasses)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
