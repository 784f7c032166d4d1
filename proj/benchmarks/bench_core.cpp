#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "rfcomp/bloch.hpp"
#include "rfcomp/modulation.hpp"
#include "rfcomp/pulse_text.hpp"
#include "rfcomp/reference_corpus.hpp"
#include "rfcomp/search.hpp"
#include "rfcomp/synthesis.hpp"

using namespace rfcomp;

namespace {
constexpr double kPi = std::numbers::pi;

void BM_GramSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = heuristic_frequencies(Method::fsm, n);
  const BasisSpec basis{Method::fsm, g, 0.5};
  const auto t = default_target(Method::fsm, kPi / 2);
  for (auto _ : state) benchmark::DoNotOptimize(gram_solve(basis, t));
}
BENCHMARK(BM_GramSolve)->DenseRange(2, 4);

void BM_ResidualModelFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ResidualModel model(Method::delta_mod, 0.5, default_target(Method::delta_mod, kPi / 2));
  const auto g = heuristic_frequencies(Method::delta_mod, n);
  for (auto _ : state) benchmark::DoNotOptimize(model.fit(g));
}
BENCHMARK(BM_ResidualModelFit)->DenseRange(2, 4);

void BM_SimulateListed(benchmark::State& state) {
  const auto& ref = reference_design(Method::delta_mod, Selection::gradient, 4);
  const auto p = parse_program(ref.pulse_text);
  const auto grid = EnsembleGrid::centered(0.5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_program(p, grid));
}
BENCHMARK(BM_SimulateListed)->Arg(201)->Arg(1001);

void BM_GradientSearch(benchmark::State& state) {
  SearchOptions o;
  o.starts = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient_search(Method::delta_mod, 2, 90.0, 0.5, o));
  }
}
BENCHMARK(BM_GradientSearch)->Unit(benchmark::kMillisecond);

void BM_SimulateModulatedSampled(benchmark::State& state) {
  ModulationSpec s;
  s.shape = ModulationSpec::Shape::sampled;
  for (int i = 0; i < 201; ++i) s.samples.push_back(-0.01);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_modulated(s, 0.9));
}
BENCHMARK(BM_SimulateModulatedSampled);
}  // namespace

BENCHMARK_MAIN();
