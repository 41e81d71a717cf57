#include <benchmark/benchmark.h>

#include <random>

#include "semicech/analysis.hpp"
#include "semicech/cochain.hpp"
#include "semicech/obstruction.hpp"
#include "semicech/oracle.hpp"
#include "semicech/random_models.hpp"

using namespace semicech;

namespace {

void BM_Table1Sweep(benchmark::State& state) {
  const auto m = table1_model();
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_sweep(m));
}
BENCHMARK(BM_Table1Sweep);

void BM_GeneralizedBoolean(benchmark::State& state) {
  const auto m = hardy_model();
  const auto& s = m.scenario();
  const auto x = *s.parse_event(s.context(0), "00");
  for (auto _ : state) benchmark::DoNotOptimize(generalized_obstruction(m, 0, x));
}
BENCHMARK(BM_GeneralizedBoolean);

void BM_GeneralizedNonneg(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto m = random_model(cycle_scenario(static_cast<int>(state.range(0))), make_nonneg_rational(), rng);
  const auto& s = m.scenario();
  std::uint64_t r = 0;
  while (!m.supported(0, r)) ++r;
  const auto x = s.unrank(s.context(0), r);
  for (auto _ : state) benchmark::DoNotOptimize(generalized_obstruction(m, 0, x));
}
BENCHMARK(BM_GeneralizedNonneg)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_BasisOracle(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto m = random_model(cycle_scenario(static_cast<int>(state.range(0))), make_nonneg_rational(), rng);
  const auto& s = m.scenario();
  std::uint64_t r = 0;
  while (!m.supported(0, r)) ++r;
  const auto x = s.unrank(s.context(0), r);
  for (auto _ : state) benchmark::DoNotOptimize(basis_oracle(m, 0, x));
}
BENCHMARK(BM_BasisOracle)->Arg(3)->Arg(4);

void BM_ClassicalInteger(benchmark::State& state) {
  const auto m = pr_box(make_nonneg_rational());
  const auto& s = m.scenario();
  const auto x = *s.parse_event(s.context(1), "01");
  for (auto _ : state) benchmark::DoNotOptimize(classical_obstruction(m, 1, x, make_integer()));
}
BENCHMARK(BM_ClassicalInteger);

void BM_ContextualFraction(benchmark::State& state) {
  const auto q = make_nonneg_rational();
  const auto m = mixture(pr_box(q), deterministic_model(q), Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(contextual_fraction(m));
}
BENCHMARK(BM_ContextualFraction);

void BM_FourTerm(benchmark::State& state) {
  const Nerve n(Scenario::build_uniform({"a", "b", "c", "d", "e"},
                                        {{"a", "b", "c"}, {"a", "c", "d"}, {"a", "d", "e"}, {"a", "b", "e"}}, {"0", "1"}),
                3);
  const auto r = make_rational();
  std::mt19937_64 rng(3);
  const auto c = random_cochain(n, r, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(four_term_holds(n, r, c));
}
BENCHMARK(BM_FourTerm);

}  // namespace

BENCHMARK_MAIN();
