#include "semicech/cochain.hpp"

#include <algorithm>

#include "semicech/errors.hpp"

namespace semicech {

namespace {

/// For every (q+1)-simplex, the positions of its faces within level q.
std::vector<std::vector<std::size_t>> face_table(const Nerve& nerve, int q) {
  if (q + 1 > nerve.max_q()) {
    throw ScenarioError("nerve was built to dimension " + std::to_string(nerve.max_q()) +
                        ", coboundary of degree " + std::to_string(q) + " needs " + std::to_string(q + 1));
  }
  const auto& upper = nerve.simplices(q + 1);
  std::vector<std::vector<std::size_t>> table;
  table.reserve(upper.size());
  for (const auto& sigma : upper) {
    std::vector<std::size_t> faces;
    for (int k = 0; k <= sigma.dimension(); ++k) {
      faces.push_back(*nerve.index_of(face(nerve.scenario(), sigma, k).contexts));
    }
    table.push_back(std::move(faces));
  }
  return table;
}

void check_shape(const Nerve& nerve, const Cochain& c) {
  const auto& level = nerve.simplices(c.degree);
  if (c.values.size() != level.size()) throw ScenarioError("cochain does not match the nerve");
}

enum class FaceParity { Even, Odd, Alternating };

Cochain coboundary(const Nerve& nerve, const SemiringSpec& r, const Cochain& c, FaceParity parity) {
  check_shape(nerve, c);
  const auto faces = face_table(nerve, c.degree);
  const auto& upper = nerve.simplices(c.degree + 1);
  Cochain out{c.degree + 1, {}};
  out.values.reserve(upper.size());
  for (std::size_t i = 0; i < upper.size(); ++i) {
    FreeVector value(upper[i].intersection);
    for (std::size_t k = 0; k < faces[i].size(); ++k) {
      const bool even = k % 2 == 0;
      if (parity == FaceParity::Even && !even) continue;
      if (parity == FaceParity::Odd && even) continue;
      FreeVector pushed = push_vector(nerve.scenario(), r, c.values[faces[i][k]], upper[i].intersection);
      if (parity == FaceParity::Alternating && !even) pushed = scale(r, r.negate(r.one()), pushed);
      value = add(r, value, pushed);
    }
    out.values.push_back(std::move(value));
  }
  return out;
}

Cochain add_cochains(const SemiringSpec& r, const Cochain& a, const Cochain& b) {
  Cochain out{a.degree, {}};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values.push_back(add(r, a.values[i], b.values[i]));
  return out;
}

}  // namespace

Cochain zero_cochain(const Nerve& nerve, int q) {
  Cochain c{q, {}};
  for (const auto& sigma : nerve.simplices(q)) c.values.emplace_back(sigma.intersection);
  return c;
}

Cochain model_cochain(const EmpiricalModel& m, const Nerve& nerve) {
  Cochain c{0, {}};
  const SemiringSpec& r = m.semiring();
  for (int ctx = 0; ctx < m.scenario().context_count(); ++ctx) {
    FreeVector v(m.scenario().context(ctx));
    const auto& table = m.table(ctx);
    for (std::uint64_t rank = 0; rank < table.size(); ++rank) v.accumulate(r, rank, table[rank]);
    c.values.push_back(std::move(v));
  }
  (void)nerve;
  return c;
}

Cochain random_cochain(const Nerve& nerve, const SemiringSpec& r, int q, std::mt19937_64& rng, int max_terms) {
  Cochain c{q, {}};
  std::uniform_int_distribution<int> terms(0, max_terms);
  for (const auto& sigma : nerve.simplices(q)) {
    FreeVector v(sigma.intersection);
    const std::uint64_t n = nerve.scenario().event_count(sigma.intersection);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (int t = terms(rng); t > 0; --t) v.accumulate(r, pick(rng), sample_element(r, rng));
    c.values.push_back(std::move(v));
  }
  return c;
}

Cochain coboundary_ring(const Nerve& nerve, const SemiringSpec& ring, const Cochain& c) {
  if (!ring.has_negation()) {
    throw NoNegation("ring coboundary needs additive inverses; '" + ring.name() + "' has none");
  }
  return coboundary(nerve, ring, c, FaceParity::Alternating);
}

Cochain coboundary_plus(const Nerve& nerve, const SemiringSpec& r, const Cochain& c) {
  return coboundary(nerve, r, c, FaceParity::Even);
}

Cochain coboundary_minus(const Nerve& nerve, const SemiringSpec& r, const Cochain& c) {
  return coboundary(nerve, r, c, FaceParity::Odd);
}

bool four_term_holds(const Nerve& nerve, const SemiringSpec& r, const Cochain& c) {
  const Cochain plus = coboundary_plus(nerve, r, c);
  const Cochain minus = coboundary_minus(nerve, r, c);
  const Cochain lhs = add_cochains(r, coboundary_plus(nerve, r, plus), coboundary_minus(nerve, r, minus));
  const Cochain rhs = add_cochains(r, coboundary_minus(nerve, r, plus), coboundary_plus(nerve, r, minus));
  return lhs == rhs;
}

bool dd_vanishes(const Nerve& nerve, const SemiringSpec& ring, const Cochain& c) {
  const Cochain dd = coboundary_ring(nerve, ring, coboundary_ring(nerve, ring, c));
  return std::all_of(dd.values.begin(), dd.values.end(), [](const FreeVector& v) { return v.is_zero(); });
}

bool complex_condition_check(const Nerve& nerve, const SemiringSpec& r, int q, std::size_t trials,
                             std::mt19937_64& rng) {
  for (std::size_t t = 0; t < trials; ++t) {
    const Cochain c = random_cochain(nerve, r, q, rng);
    if (!four_term_holds(nerve, r, c)) return false;
    if (r.has_negation() && !dd_vanishes(nerve, r, c)) return false;
  }
  return true;
}

bool is_cocycle(const Nerve& nerve, const SemiringSpec& r, const Cochain& c) {
  return coboundary_plus(nerve, r, c) == coboundary_minus(nerve, r, c);
}

EventPresheaf EventPresheaf::full(const Scenario& s) {
  EventPresheaf p;
  for (int c = 0; c < s.context_count(); ++c) p.allowed_.emplace_back(s.event_count(s.context(c)), true);
  return p;
}

EventPresheaf EventPresheaf::support(const EmpiricalModel& m) {
  EventPresheaf p;
  p.full_ = false;
  for (int c = 0; c < m.scenario().context_count(); ++c) {
    const auto& table = m.table(c);
    std::vector<bool> allowed(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) allowed[i] = !m.semiring().is_zero(table[i]);
    p.allowed_.push_back(std::move(allowed));
  }
  return p;
}

std::vector<std::uint64_t> EventPresheaf::basis(int context) const {
  std::vector<std::uint64_t> out;
  const auto& allowed = allowed_.at(context);
  for (std::uint64_t i = 0; i < allowed.size(); ++i) {
    if (allowed[i]) out.push_back(i);
  }
  return out;
}

bool in_zeroth_cohomology(const Nerve& nerve, const SemiringSpec& r, const Cochain& c) {
  return c.degree == 0 && is_cocycle(nerve, r, c);
}

std::vector<Cochain> enumerate_basis_families(const Nerve& nerve, const EventPresheaf& presheaf,
                                              const SemiringSpec& r, std::uint64_t cutoff) {
  const Scenario& s = nerve.scenario();
  std::vector<std::vector<std::uint64_t>> bases;
  std::uint64_t candidates = 1;
  for (int c = 0; c < s.context_count(); ++c) {
    bases.push_back(presheaf.basis(c));
    const auto n = static_cast<std::uint64_t>(bases.back().size());
    if (n == 0) return {};
    if (candidates > cutoff / n) {
      throw TooLarge("more than " + std::to_string(cutoff) + " candidate families");
    }
    candidates *= n;
  }
  std::vector<Cochain> out;
  std::vector<std::size_t> choice(bases.size(), 0);
  for (std::uint64_t iter = 0; iter < candidates; ++iter) {
    Cochain family{0, {}};
    for (int c = 0; c < s.context_count(); ++c) {
      family.values.push_back(FreeVector::basis(s, s.unrank(s.context(c), bases[c][choice[c]]), r.one()));
    }
    if (is_cocycle(nerve, r, family)) out.push_back(std::move(family));
    for (std::size_t pos = choice.size(); pos-- > 0;) {
      if (++choice[pos] < bases[pos].size()) break;
      choice[pos] = 0;
    }
  }
  return out;
}

std::optional<JointEvent> glue_family(const Nerve& nerve, const Cochain& family) {
  const Scenario& s = nerve.scenario();
  if (family.degree != 0 || static_cast<int>(family.values.size()) != s.context_count()) return std::nullopt;
  std::vector<int> assignment(s.measurement_count(), -1);
  for (const auto& v : family.values) {
    if (v.terms().size() != 1) return std::nullopt;
    const JointEvent e = s.unrank(v.domain(), v.terms().begin()->first);
    const auto members = e.domain.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      int& slot = assignment[members[i]];
      if (slot != -1 && slot != e.outcomes[i]) return std::nullopt;
      slot = e.outcomes[i];
    }
  }
  if (std::find(assignment.begin(), assignment.end(), -1) != assignment.end()) return std::nullopt;
  return JointEvent{s.all_measurements(), assignment};
}

bool relative_member(const Nerve& nerve, const SemiringSpec& r, const Cochain& c, RelativeMask mask) {
  const Scenario& s = nerve.scenario();
  const auto& level = nerve.simplices(c.degree);
  const MeasurementSet base = s.context(mask.excluded_context);
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (!push_vector(s, r, c.values[i], level[i].intersection & base).is_zero()) return false;
  }
  return true;
}

OperatorMatrix identity_operator(const Scenario& s, const SemiringSpec& r, MeasurementSet domain) {
  const std::uint64_t n = s.event_count(domain);
  OperatorMatrix g{domain, std::vector<std::vector<Element>>(n, std::vector<Element>(n, r.zero()))};
  for (std::uint64_t i = 0; i < n; ++i) g.rows[i][i] = r.one();
  return g;
}

FreeVector apply_operator(const SemiringSpec& r, const FreeVector& v, const OperatorMatrix& g) {
  FreeVector out(g.domain);
  for (const auto& [i, coefficient] : v.terms()) {
    const auto& row = g.rows.at(i);
    for (std::uint64_t j = 0; j < row.size(); ++j) {
      if (!r.is_zero(row[j])) out.accumulate(r, j, r.mul(coefficient, row[j]));
    }
  }
  return out;
}

bool is_row_stochastic(const SemiringSpec& r, const OperatorMatrix& g) {
  return std::all_of(g.rows.begin(), g.rows.end(), [&](const auto& row) { return r.sum(row) == r.one(); });
}

bool relative_member(const Nerve& nerve, const SemiringSpec& r, const DifferenceCochain& d, RelativeMask mask) {
  const Scenario& s = nerve.scenario();
  const auto& level = nerve.simplices(d.plus.degree);
  const MeasurementSet base = s.context(mask.excluded_context);
  for (std::size_t i = 0; i < level.size(); ++i) {
    const MeasurementSet target = level[i].intersection & base;
    if (push_vector(s, r, d.plus.values[i], target) != push_vector(s, r, d.minus.values[i], target)) {
      return false;
    }
  }
  return true;
}

}  // namespace semicech
