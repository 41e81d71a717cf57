#include <doctest.h>

#include <random>

#include "semicech/analysis.hpp"
#include "semicech/cochain.hpp"
#include "semicech/errors.hpp"
#include "semicech/oracle.hpp"
#include "semicech/random_models.hpp"
#include "support.hpp"

using namespace semicech;

namespace {

FreeVector as_vector(const SemiringSpec& r, const Measure& m) {
  FreeVector v(m.domain);
  for (std::size_t i = 0; i < m.weights.size(); ++i) v.accumulate(r, i, m.weights[i]);
  return v;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("marginalization is functorial") {
  const auto s = Scenario::build_uniform({"a", "b", "c"}, {{"a", "b", "c"}}, {"0", "1", "2"});
  const auto q = make_nonneg_rational();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Element> table(27);
    Rational total = 0;
    for (auto& w : table) {
      w = Rational(static_cast<int>(rng() % 5));
      total += w;
    }
    if (total == 0) continue;
    for (auto& w : table) w = Rational(w / total);
    const auto m = make_model_dense(s, q, {table});
    const auto ab = s.measurement_set({"a", "b"});
    const auto b = s.measurement_set({"b"});
    const Measure direct = marginalize(m, 0, b);
    const FreeVector two_step = push_vector(s, q, as_vector(q, marginalize(m, 0, ab)), b);
    CHECK(two_step == as_vector(q, direct));
    CHECK(two_step.mass(q) == 1);
  }
}

TEST_CASE("construction errors") {
  const auto s = cycle_scenario(3);
  const auto q = make_nonneg_rational();
  const auto e = [&](int k, const char* label) { return *s.parse_event(s.context(k), label); };
  CHECK_THROWS_AS(make_model(s, q, {{{e(0, "00"), Rational(1, 2)}}, {{e(1, "00"), 1}}, {{e(2, "00"), 1}}}),
                  NormalizationError);
  CHECK_THROWS_AS(make_model(s, q, {{{e(0, "00"), -1}, {e(0, "11"), 2}}, {{e(1, "00"), 1}}, {{e(2, "00"), 1}}}),
                  NotAnElement);
  CHECK_THROWS_AS(make_model(s, q, {{{e(0, "00"), Rational(1, 2)}, {e(0, "00"), Rational(1, 2)}},
                                    {{e(1, "00"), 1}},
                                    {{e(2, "00"), 1}}}),
                  UnknownEvent);
  CHECK_THROWS_AS(make_model(s, q, {{{e(1, "00"), 1}}, {{e(1, "00"), 1}}, {{e(2, "00"), 1}}}), UnknownEvent);
  const auto m = deterministic_model(q, 3);
  CHECK_THROWS_AS(marginalize(m, 0, s.measurement_set({"c"})), NotSubcontext);
}

TEST_CASE("non-disturbance agrees with the model cochain being a cocycle") {
  std::mt19937_64 rng(17);
  std::vector<EmpiricalModel> models{table1_model(), pr_box(make_nonneg_rational()), hardy_model(),
                                     disturbing_example(), fully_mixed_model()};
  for (const auto& stem : testing::corpus_stems()) models.push_back(testing::corpus_model(stem));
  for (int i = 0; i < 40; ++i) {
    models.push_back(random_model(cycle_scenario(3 + i % 2), i % 3 ? make_nonneg_rational() : make_boolean(), rng));
  }
  int disturbing = 0;
  for (const auto& m : models) {
    const Nerve n(m.scenario());
    const bool nd = static_cast<bool>(is_nondisturbing(m));
    CHECK(is_cocycle(n, m.semiring(), model_cochain(m, n)) == nd);
    disturbing += !nd;
  }
  CHECK(disturbing == 2);  // the factory and the corpus file
  const auto w = is_nondisturbing(disturbing_example()).witness;
  REQUIRE(w.has_value());
  CHECK(w->first_weight != w->second_weight);
}

TEST_CASE("incidence matrix: one 1 per context block in every column") {
  const auto s = cycle_scenario(4);
  const auto inc = incidence_matrix(s);
  CHECK(inc.columns.size() == 16);
  CHECK(inc.rows.size() == 16);
  for (std::size_t c = 0; c < inc.columns.size(); ++c) {
    std::vector<int> per(s.context_count(), 0);
    for (std::size_t r = 0; r < inc.rows.size(); ++r) per[inc.rows[r].context] += inc.entries[r][c];
    for (int k : per) CHECK(k == 1);
  }
  CHECK_THROWS_AS(global_sections(s, 8), TooLarge);
}

TEST_CASE("noncontextuality matches the factorization by brute force") {
  // Boolean: literal subset search over all 2^16 subsets of global sections.
  std::mt19937_64 rng(23);
  std::vector<EmpiricalModel> boolean{table1_model(), hardy_model(), pr_box(make_boolean()),
                                      triangle_anticorrelated(make_boolean()), deterministic_model(make_boolean())};
  for (int i = 0; i < 30; ++i) boolean.push_back(random_model(cycle_scenario(3 + i % 2), make_boolean(), rng));
  for (const auto& m : boolean) {
    CHECK(noncontextual_decompose(m).has_value() == testing::boolean_subset_search(m));
  }
  // Q+: Caratheodory basis enumeration of [M; 1] b = [p; 1].
  std::vector<EmpiricalModel> positive{pr_box(make_nonneg_rational()), fully_mixed_model(),
                                       triangle_anticorrelated(make_nonneg_rational())};
  for (int i = 0; i < 30; ++i) positive.push_back(random_model(cycle_scenario(3 + i % 2), make_nonneg_rational(), rng));
  for (const auto& m : positive) {
    const auto decomposition = noncontextual_decompose(m);
    // Pinning a supported section of a Q+ model repeats one row of M b = p,
    // so the pinned oracle decides plain feasibility.
    const auto& s = m.scenario();
    std::uint64_t r = 0;
    while (!m.supported(0, r)) ++r;
    const bool feasible = basis_oracle(m, 0, s.unrank(s.context(0), r)).extendable;
    CHECK(decomposition.has_value() == feasible);
    if (decomposition) CHECK(realizes(m, *decomposition));
  }
}

}
