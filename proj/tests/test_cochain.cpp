#include <doctest.h>

#include <random>
#include <set>

#include "semicech/cochain.hpp"
#include "semicech/errors.hpp"
#include "semicech/obstruction.hpp"
#include "semicech/random_models.hpp"

using namespace semicech;

namespace {

// Four triangles around a: the nerve has simplices up to dimension 3, so
// d on 1-cochains lands in a nonempty 2-skeleton.
Scenario star() {
  return Scenario::build_uniform({"a", "b", "c", "d", "e"}, {{"a", "b", "c"}, {"a", "c", "d"}, {"a", "d", "e"}, {"a", "b", "e"}},
                                 {"0", "1"});
}

std::vector<SemiringSpec> all_semirings() {
  return {make_boolean(), make_natural(), make_integer(), make_nonneg_rational(), make_rational()};
}

}  // namespace

TEST_SUITE("cochain") {

TEST_CASE("d d = 0 over rings") {
  std::mt19937_64 rng(101);
  for (const auto& s : {star(), cycle_scenario(4), cycle_scenario(3)}) {
    const Nerve n(s, 3);
    for (const auto& ring : {make_integer(), make_rational()}) {
      for (int q = 0; q <= 1; ++q) {
        for (int t = 0; t < 40; ++t) CHECK(dd_vanishes(n, ring, random_cochain(n, ring, q, rng)));
      }
    }
  }
  const Nerve n(cycle_scenario(4));
  CHECK_THROWS_AS(coboundary_ring(n, make_nonneg_rational(), zero_cochain(n, 0)), NoNegation);
}

TEST_CASE("four-term condition over every shipped semiring") {
  std::mt19937_64 rng(202);
  const Nerve n(star(), 3);
  for (const auto& r : all_semirings()) {
    CAPTURE(r.name());
    for (int q = 0; q <= 1; ++q) CHECK(complex_condition_check(n, r, q, 60, rng));
  }
}

TEST_CASE("ring coboundary is d+ minus d-") {
  std::mt19937_64 rng(303);
  const Nerve n(star(), 3);
  for (const auto& ring : {make_integer(), make_rational()}) {
    for (int q = 0; q <= 2; ++q) {
      for (int t = 0; t < 20; ++t) {
        const Cochain c = random_cochain(n, ring, q, rng);
        const Cochain d = coboundary_ring(n, ring, c);
        const Cochain plus = coboundary_plus(n, ring, c);
        const Cochain minus = coboundary_minus(n, ring, c);
        REQUIRE(d.values.size() == plus.values.size());
        for (std::size_t i = 0; i < d.values.size(); ++i) {
          CHECK(d.values[i] == subtract(ring, plus.values[i], minus.values[i]));
        }
      }
    }
  }
}

TEST_CASE("degree-0 convention: d+ pushes the later context") {
  const auto s = cycle_scenario(4);
  const Nerve n(s);
  const auto z = make_integer();
  Cochain c = zero_cochain(n, 0);
  // contexts ab(0), ad(1): put [01] on ab only.
  c.values[0] = FreeVector::basis(s, *s.parse_event(s.context(0), "01"), 1);
  const auto idx = n.index_of({0, 1});
  REQUIRE(idx.has_value());
  CHECK(coboundary_plus(n, z, c).values[*idx].is_zero());
  CHECK(coboundary_minus(n, z, c).values[*idx].mass(z) == 1);
}

TEST_CASE("identity witnesses make plus equal minus") {
  for (const auto& m : {pr_box(make_nonneg_rational()), fully_mixed_model(), table1_model()}) {
    const Nerve n(m.scenario());
    const auto d = difference_of(n, m.semiring(), model_cochain(m, n));
    CHECK(d.trivial());
    for (std::size_t i = 0; i < d.witness.size(); ++i) {
      REQUIRE(d.witness[i].has_value());
      CHECK(*d.witness[i] == identity_operator(m.scenario(), m.semiring(), n.simplices(1)[i].intersection));
    }
  }
}

TEST_CASE("rank-one witnesses are row stochastic and map d+ to d-") {
  const auto m = pr_box(make_nonneg_rational());
  const auto& s = m.scenario();
  const Nerve n(s);
  const auto q = m.semiring();
  const JointEvent x = *s.parse_event(s.context(1), "01");
  const Cochain c = extend_section(m, 1, FreeVector::basis(s, x, Rational(1, 2)));
  const auto d = difference_of(n, q, c);
  int witnessed = 0;
  for (std::size_t i = 0; i < d.witness.size(); ++i) {
    if (!d.witness[i]) continue;
    ++witnessed;
    CHECK(is_row_stochastic(q, *d.witness[i]));
    CHECK(apply_operator(q, d.plus.values[i], *d.witness[i]) == d.minus.values[i]);
  }
  CHECK(witnessed == static_cast<int>(d.witness.size()));
  CHECK_THROWS_AS(difference_of(n, make_integer(), zero_cochain(n, 0)), NotSemifield);
}

TEST_CASE("H0 = Z0: compatible single-event families biject with global assignments") {
  for (const auto& s : {cycle_scenario(3), cycle_scenario(4), star()}) {
    const Nerve n(s);
    const auto families = enumerate_basis_families(n, EventPresheaf::full(s), make_integer());
    const auto globals = global_sections(s);
    CHECK(families.size() == globals.size());
    std::set<std::uint64_t> glued;
    for (const auto& f : families) {
      CHECK(in_zeroth_cohomology(n, make_integer(), f));
      const auto g = glue_family(n, f);
      REQUIRE(g.has_value());
      glued.insert(s.rank(*g));
    }
    CHECK(glued.size() == globals.size());
  }
}

TEST_CASE("support presheaf families are the support-consistent global assignments") {
  for (const auto& m : {table1_model(), hardy_model(), pr_box(make_boolean()), deterministic_model(make_boolean())}) {
    const auto& s = m.scenario();
    const Nerve n(s);
    const auto families = enumerate_basis_families(n, EventPresheaf::support(m), m.semiring());
    std::size_t consistent = 0;
    for (const auto& g : global_sections(s)) {
      bool ok = true;
      for (int k = 0; k < s.context_count() && ok; ++k) ok = m.supported(k, s.rank(restrict_event(g, s.context(k))));
      consistent += ok;
    }
    CHECK(families.size() == consistent);
  }
}

TEST_CASE("glue_family rejects incompatible families") {
  const auto s = cycle_scenario(3);
  const Nerve n(s);
  Cochain c = zero_cochain(n, 0);
  c.values[0] = FreeVector::basis(s, *s.parse_event(s.context(0), "00"), 1);
  c.values[1] = FreeVector::basis(s, *s.parse_event(s.context(1), "11"), 1);
  c.values[2] = FreeVector::basis(s, *s.parse_event(s.context(2), "00"), 1);
  CHECK_FALSE(glue_family(n, c).has_value());
  CHECK_FALSE(in_zeroth_cohomology(n, make_integer(), c));
}

}
