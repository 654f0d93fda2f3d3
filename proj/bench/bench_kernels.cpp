// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "kplan/gridworld.hpp"
#include "kplan/oracle.hpp"
#include "kplan/planner_dp.hpp"
#include "kplan/scap.hpp"

namespace {

using namespace kplan;

const Room& big_room() {
  static const Room room = build_room({.n = 60, .goal = GoalPlacement::Middle, .horizon_override = 119});
  return room;
}

void BM_BackwardInductionSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(backward_induction_serial(big_room().dfa));
}

void BM_BackwardInduction(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(backward_induction(big_room().dfa));
}

void BM_EnumerateMacrosSerial(benchmark::State& state) {
  const Lz76Estimator est;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_macros_serial(5, 7, est));
}

void BM_EnumerateMacros(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const Lz76Estimator est;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_macros(5, 7, est));
}

struct StageFixture {
  StageConfig cfg = StageConfig::hard(4, 30, std::vector<double>(30, 9.0));
  AdmissibleSet candidates = build_candidates(big_room().dfa, cfg, Lz76Estimator());
};

const StageFixture& stages() {
  static const StageFixture f;
  return f;
}

void BM_SolveStagesSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_stages_serial(big_room().dfa, stages().cfg, stages().candidates));
  }
}

void BM_SolveStages(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_stages(big_room().dfa, stages().cfg, stages().candidates));
  }
}

void BM_BruteForceSerial(benchmark::State& state) {
  const Room room = build_room({.n = 5});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal_serial(room.dfa, room.start));
}

void BM_BruteForce(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const Room room = build_room({.n = 5});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal(room.dfa, room.start));
}

void threads(benchmark::internal::Benchmark* b) {
  const int max = omp_get_num_procs();
  for (int t = 1; t <= max; t *= 2) b->Arg(t);
  if ((max & (max - 1)) != 0) b->Arg(max);
}

BENCHMARK(BM_BackwardInductionSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BackwardInduction)->Apply(threads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateMacrosSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateMacros)->Apply(threads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveStagesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveStages)->Apply(threads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BruteForceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce)->Apply(threads)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
