#include <benchmark/benchmark.h>

#include "relim/analysis.hpp"
#include "relim/diagram.hpp"
#include "relim/family.hpp"
#include "relim/round_elim.hpp"
#include "relim/simulator.hpp"
#include "relim/text_format.hpp"

using namespace relim;

namespace {

// The family's re at growing degree; alphabet stays at five labels.
void BM_ReFamily(benchmark::State& state) {
  const int delta = static_cast<int>(state.range(0));
  Problem p = make_family_problem({delta, delta - 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(re(p));
}
BENCHMARK(BM_ReFamily)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

// Node-side search on the eight-label re output, the costly half of a speedup step.
void BM_RereFamily(benchmark::State& state) {
  LiftedProblem first = re(make_family_problem({static_cast<int>(state.range(0)), 3, 1}));
  EnumerationOptions options;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(rere(first.problem, options));
}
BENCHMARK(BM_RereFamily)->ArgsProduct({{4, 5}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

// re of the family under the eight set names, checked against the relaxation target.
void BM_SpeedupVerify(benchmark::State& state) {
  FamilyParams params{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) - 1, 1};
  Problem p = rename_lifted(re(make_family_problem(params)), expected_re_dictionary()).problem;
  LiftedProblem target = make_rel_problem(params);
  for (auto _ : state) benchmark::DoNotOptimize(verify_speedup_target(p, target));
}
BENCHMARK(BM_SpeedupVerify)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_MisRoundTrip(benchmark::State& state) {
  Problem mis = make_mis_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    LiftedProblem once = re(mis);
    benchmark::DoNotOptimize(rere(once.problem));
  }
}
BENCHMARK(BM_MisRoundTrip)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_ParseSerialize(benchmark::State& state) {
  const std::string text = serialize_problem(make_plus_problem({16, 9, 3}));
  for (auto _ : state) benchmark::DoNotOptimize(serialize_problem(parse_problem(text)));
}
BENCHMARK(BM_ParseSerialize);

void BM_Diagram(benchmark::State& state) {
  Problem p = expected_re_problem({8, 6, 1});
  for (auto _ : state) {
    Diagram d = build_diagram(p, Side::node);
    benchmark::DoNotOptimize(right_closed_sets(d));
  }
}
BENCHMARK(BM_Diagram);

// Condensed evaluation keeps this flat in the degree.
void BM_ZeroRound(benchmark::State& state) {
  Problem p = make_family_problem({static_cast<int>(state.range(0)), 8, 2});
  for (auto _ : state) benchmark::DoNotOptimize(zero_round_solvable_symmetric(p));
}
BENCHMARK(BM_ZeroRound)->RangeMultiplier(16)->Range(16, 1 << 16);

void BM_Sequence(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_sequence(1 << 20, 2, 0.25));
}
BENCHMARK(BM_Sequence);

void BM_GreedyKods(benchmark::State& state) {
  LabeledTree tree = random_tree(static_cast<int>(state.range(0)), 4, 7);
  for (auto _ : state) {
    DSolution s = greedy_kods(tree, 1);
    benchmark::DoNotOptimize(check_kods(tree, s, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyKods)->RangeMultiplier(10)->Range(100, 100000)->Unit(benchmark::kMicrosecond);

void BM_KodsLabeling(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  LabeledTree tree = random_tree(n, 4, 11);
  DSolution s = greedy_kods(tree, 1);
  Problem family = make_family_problem({4, 2, 1});
  for (auto _ : state) {
    LabeledTree labeled = kods_to_family_labeling(tree, s, 2, 1);
    benchmark::DoNotOptimize(check_labeling(labeled, family));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_KodsLabeling)->RangeMultiplier(10)->Range(100, 100000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
