#include "semicech/obstruction.hpp"

#include <algorithm>
#include <functional>

#include "semicech/errors.hpp"
#include "semicech/linalg.hpp"
#include "semicech/lp.hpp"

namespace semicech {

const char* to_string(Verdict v) { return v == Verdict::Trivial ? "trivial" : "nontrivial"; }

namespace {

void require_nondisturbing(const EmpiricalModel& m) {
  const auto check = is_nondisturbing(m);
  if (check) return;
  const auto& w = *check.witness;
  const Scenario& s = m.scenario();
  throw Disturbing("contexts {" + s.set_label(s.context(w.first)) + "} and {" + s.set_label(s.context(w.second)) +
                   "} disagree on " + s.section_label(w.event) + ": " + format_rational(w.first_weight) +
                   " vs " + format_rational(w.second_weight));
}

void require_event(const Scenario& s, int j0, const JointEvent& event) {
  if (j0 < 0 || j0 >= s.context_count()) throw UnknownEvent("context index out of range");
  if (event.domain != s.context(j0) || event.outcomes.size() != static_cast<std::size_t>(event.domain.size())) {
    throw UnknownEvent("event does not belong to context {" + s.set_label(s.context(j0)) + "}");
  }
}

bool agrees(const Scenario& s, MeasurementSet ctx, std::uint64_t rank, MeasurementSet overlap,
            std::uint64_t target) {
  return s.restrict_rank(ctx, rank, overlap) == target;
}

ObstructionResult zero_measure_result(const Nerve& nerve, ObstructionKind kind,
                                      std::string semiring, int j0, const JointEvent& event) {
  ObstructionResult r;
  r.kind = kind;
  r.semiring = std::move(semiring);
  r.base_context = j0;
  r.event = event;
  r.base = FreeVector(event.domain);
  r.verdict = Verdict::Trivial;
  r.extension = zero_cochain(nerve, 0);
  r.witness = r.extension;
  r.zero_measure = true;
  return r;
}

// Incidence rows of M with the pin row appended.
struct PinnedSystem {
  IncidenceMatrix incidence;
  std::vector<std::uint8_t> pin;  // per column
  linalg::RationalMatrix a;
  std::vector<Rational> b;
};

PinnedSystem pinned_system(const EmpiricalModel& m, int j0, const JointEvent& event, const Element& mu,
                           std::uint64_t cutoff) {
  const Scenario& s = m.scenario();
  PinnedSystem sys{incidence_matrix(s, cutoff), {}, {}, model_vector(m)};
  const MeasurementSet all = s.all_measurements();
  const std::uint64_t x = s.rank(event);
  for (const auto g : sys.incidence.columns) {
    sys.pin.push_back(s.restrict_rank(all, g, s.context(j0)) == x ? 1 : 0);
  }
  for (const auto& row : sys.incidence.entries) {
    sys.a.emplace_back(row.begin(), row.end());
  }
  sys.a.emplace_back(sys.pin.begin(), sys.pin.end());
  sys.b.push_back(mu);
  return sys;
}

lp::Problem pinned_problem(const PinnedSystem& sys) {
  lp::Problem p;
  p.a = sys.a;
  p.b = sys.b;
  p.senses.assign(sys.b.size(), lp::Sense::Equal);
  p.objective.assign(sys.incidence.columns.size(), Rational(0));
  return p;
}

// r_k = sum over pinned globals g of b_g [g|U_k].
Cochain family_from_globals(const EmpiricalModel& m, const PinnedSystem& sys, const std::vector<Rational>& b) {
  const Scenario& s = m.scenario();
  const SemiringSpec& r = m.semiring();
  const MeasurementSet all = s.all_measurements();
  Cochain family{0, {}};
  for (int k = 0; k < s.context_count(); ++k) {
    FreeVector v(s.context(k));
    for (std::size_t col = 0; col < b.size(); ++col) {
      if (!sys.pin[col] || b[col] == 0) continue;
      v.accumulate(r, s.restrict_rank(all, sys.incidence.columns[col], s.context(k)), b[col]);
    }
    family.values.push_back(std::move(v));
  }
  return family;
}

// Depth-first search for a compatible family of supported single events
// through `event` at j0. Returns the family's global assignment.
class FamilySearch {
 public:
  FamilySearch(const EmpiricalModel& m, int j0, const JointEvent& event) : m_(m), s_(m.scenario()) {
    assignment_.assign(s_.measurement_count(), -1);
    const auto members = event.domain.members();
    for (std::size_t i = 0; i < members.size(); ++i) assignment_[members[i]] = event.outcomes[i];
    for (int k = 0; k < s_.context_count(); ++k) {
      std::vector<JointEvent> events;
      const auto& table = m.table(k);
      for (std::uint64_t rank = 0; rank < table.size(); ++rank) {
        if (!m.semiring().is_zero(table[rank])) events.push_back(s_.unrank(s_.context(k), rank));
      }
      supported_.push_back(std::move(events));
    }
    // Contexts sharing the most already-fixed measurements go first.
    MeasurementSet fixed = event.domain;
    std::vector<bool> used(s_.context_count(), false);
    used[j0] = true;
    for (int step = 1; step < s_.context_count(); ++step) {
      int best = -1;
      int best_overlap = -1;
      for (int k = 0; k < s_.context_count(); ++k) {
        if (used[k]) continue;
        const int overlap = (s_.context(k) & fixed).size();
        if (overlap > best_overlap) {
          best = k;
          best_overlap = overlap;
        }
      }
      used[best] = true;
      order_.push_back(best);
      fixed = fixed | s_.context(best);
    }
  }

  bool run() {
    if (!viable(0)) return false;
    return descend(0);
  }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<int>& assignment() const { return assignment_; }

 private:
  bool consistent(const JointEvent& e) const {
    const auto members = e.domain.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      const int current = assignment_[members[i]];
      if (current != -1 && current != e.outcomes[i]) return false;
    }
    return true;
  }

  // Forward check: every context not yet placed still has a candidate.
  bool viable(std::size_t from) const {
    for (std::size_t l = from; l < order_.size(); ++l) {
      const auto& events = supported_[order_[l]];
      if (std::none_of(events.begin(), events.end(), [&](const JointEvent& e) { return consistent(e); })) {
        return false;
      }
    }
    return true;
  }

  bool descend(std::size_t level) {
    if (level == order_.size()) return true;
    for (const auto& e : supported_[order_[level]]) {
      ++nodes_;
      if (!consistent(e)) continue;
      const auto members = e.domain.members();
      std::vector<int> placed;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (assignment_[members[i]] == -1) {
          assignment_[members[i]] = e.outcomes[i];
          placed.push_back(members[i]);
        }
      }
      if (viable(level + 1) && descend(level + 1)) return true;
      for (int p : placed) assignment_[p] = -1;
    }
    return false;
  }

  const EmpiricalModel& m_;
  const Scenario& s_;
  std::vector<int> assignment_;
  std::vector<std::vector<JointEvent>> supported_;
  std::vector<int> order_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Cochain extend_section(const EmpiricalModel& m, int j0, const FreeVector& c0) {
  return extend_section(m, j0, c0, EventPresheaf::support(m));
}

Cochain extend_section(const EmpiricalModel& m, int j0, const FreeVector& c0, const EventPresheaf& presheaf) {
  const Scenario& s = m.scenario();
  if (j0 < 0 || j0 >= s.context_count() || c0.domain() != s.context(j0) || c0.terms().size() != 1) {
    throw UnknownEvent("base section must be a single scaled event of the base context");
  }
  require_nondisturbing(m);
  const MeasurementSet base = s.context(j0);
  const auto& [x, coefficient] = *c0.terms().begin();
  Cochain c{0, {}};
  for (int k = 0; k < s.context_count(); ++k) {
    if (k == j0) {
      c.values.push_back(c0);
      continue;
    }
    const MeasurementSet ctx = s.context(k);
    const MeasurementSet overlap = ctx & base;
    const std::uint64_t target = s.restrict_rank(base, x, overlap);
    std::optional<std::uint64_t> chosen;
    const std::uint64_t n = s.event_count(ctx);
    for (std::uint64_t rank = 0; rank < n && !chosen; ++rank) {
      if (m.supported(k, rank) && agrees(s, ctx, rank, overlap, target)) chosen = rank;
    }
    for (std::uint64_t rank = 0; rank < n && !chosen; ++rank) {
      if (presheaf.allows(k, rank) && agrees(s, ctx, rank, overlap, target)) chosen = rank;
    }
    if (!chosen) {
      throw NoAgreeingSection("no event of {" + s.set_label(ctx) + "} agrees with " +
                              s.section_label(s.unrank(base, x)));
    }
    FreeVector v(ctx);
    v.accumulate(m.semiring(), *chosen, coefficient);
    c.values.push_back(std::move(v));
  }
  return c;
}

ObstructionResult classical_obstruction(const EmpiricalModel& m, int j0, const JointEvent& event,
                                        const SemiringSpec& ring, ClassicalBasis basis) {
  if (!ring.has_negation()) {
    throw NoNegation("classical obstruction needs ring coefficients; '" + ring.name() + "' has no negation");
  }
  const Scenario& s = m.scenario();
  require_event(s, j0, event);
  require_nondisturbing(m);
  const Nerve nerve(s, 1);
  const EventPresheaf presheaf = basis == ClassicalBasis::FullEvents ? EventPresheaf::full(s)
                                                                     : EventPresheaf::support(m);
  const std::uint64_t x = s.rank(event);
  if (!presheaf.allows(j0, x)) {
    throw ZeroMeasureEvent(s.section_label(event) + " is not a section of the support presheaf");
  }

  ObstructionResult out;
  out.kind = ObstructionKind::Classical;
  out.semiring = ring.name();
  out.classical_basis = basis;
  out.base_context = j0;
  out.event = event;
  out.base = FreeVector::basis(s, event, ring.one());
  out.extension = extend_section(m, j0, out.base, presheaf);
  const Cochain z = coboundary_ring(nerve, ring, out.extension);
  if (!relative_member(nerve, ring, z, RelativeMask{j0})) {
    throw Error("internal: d c left the relative complex");
  }
  out.cocycle = z;

  // Unknowns u_{k,e} for k != j0 and e in the presheaf; u_{j0} = 0.
  std::vector<std::vector<std::uint64_t>> bases(s.context_count());
  std::vector<std::size_t> offset(s.context_count(), 0);
  std::size_t unknowns = 0;
  for (int k = 0; k < s.context_count(); ++k) {
    if (k != j0) bases[k] = presheaf.basis(k);
    offset[k] = unknowns;
    unknowns += bases[k].size();
  }
  linalg::RationalMatrix a;
  std::vector<Rational> rhs;
  const MeasurementSet base_ctx = s.context(j0);
  // Relative presheaf: u_k restricted to U_k ∩ U_{j0} vanishes.
  for (int k = 0; k < s.context_count(); ++k) {
    if (k == j0) continue;
    const MeasurementSet overlap = s.context(k) & base_ctx;
    std::vector<std::vector<Rational>> rows(s.event_count(overlap), std::vector<Rational>(unknowns, Rational(0)));
    for (std::size_t i = 0; i < bases[k].size(); ++i) {
      rows[s.restrict_rank(s.context(k), bases[k][i], overlap)][offset[k] + i] = 1;
    }
    for (auto& row : rows) {
      a.push_back(std::move(row));
      rhs.emplace_back(0);
    }
  }
  // z(j,k) = u_k| - u_j|.
  const auto& edges = nerve.simplices(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const MeasurementSet overlap = edges[e].intersection;
    const int j = edges[e].contexts[0];
    const int k = edges[e].contexts[1];
    const std::uint64_t n = s.event_count(overlap);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(unknowns, Rational(0)));
    for (std::size_t i = 0; i < bases[k].size(); ++i) {
      rows[s.restrict_rank(s.context(k), bases[k][i], overlap)][offset[k] + i] += 1;
    }
    for (std::size_t i = 0; i < bases[j].size(); ++i) {
      rows[s.restrict_rank(s.context(j), bases[j][i], overlap)][offset[j] + i] -= 1;
    }
    for (std::uint64_t t = 0; t < n; ++t) {
      a.push_back(std::move(rows[t]));
      rhs.push_back(z.values[e].coefficient(t));
    }
  }

  std::optional<std::vector<Rational>> u;
  if (ring.has_division()) {
    u = linalg::solve_rational(a, rhs);
  } else {
    linalg::IntegerMatrix ai;
    std::vector<Integer> bi;
    for (const auto& row : a) {
      std::vector<Integer> r;
      for (const auto& v : row) r.push_back(numerator(v));
      ai.push_back(std::move(r));
    }
    for (const auto& v : rhs) {
      if (!is_integral(v)) throw NotAnElement("non-integral coboundary over '" + ring.name() + "'");
      bi.push_back(numerator(v));
    }
    if (auto ui = linalg::solve_integer(ai, bi)) {
      u.emplace(ui->begin(), ui->end());
    }
  }

  if (!u) {
    out.verdict = Verdict::Nontrivial;
    out.certificate = RingInfeasible{"z = d u has no solution with u in the relative complex over '" +
                                     ring.name() + "'"};
    return out;
  }
  Cochain witness{0, {}};
  for (int k = 0; k < s.context_count(); ++k) {
    FreeVector uk(s.context(k));
    for (std::size_t i = 0; i < bases[k].size(); ++i) uk.accumulate(ring, bases[k][i], (*u)[offset[k] + i]);
    witness.values.push_back(subtract(ring, out.extension.values[k], uk));
  }
  out.verdict = Verdict::Trivial;
  out.witness = std::move(witness);
  return out;
}

DifferenceCochain difference_of(const Nerve& nerve, const SemiringSpec& r, const Cochain& c) {
  if (!r.has_division()) {
    throw NotSemifield("difference operators need a semifield; '" + r.name() + "' has no division");
  }
  DifferenceCochain d{c, coboundary_plus(nerve, r, c), coboundary_minus(nerve, r, c), {}};
  const Scenario& s = nerve.scenario();
  for (std::size_t i = 0; i < d.plus.values.size(); ++i) {
    const FreeVector& plus = d.plus.values[i];
    const FreeVector& minus = d.minus.values[i];
    if (plus == minus) {
      d.witness.push_back(identity_operator(s, r, plus.domain()));
      continue;
    }
    const Element mass = plus.mass(r);
    if (r.is_zero(mass) || mass != minus.mass(r)) {
      d.witness.emplace_back();
      continue;
    }
    const std::uint64_t n = s.event_count(plus.domain());
    std::vector<Element> row(n, r.zero());
    const Element inverse = r.inv(mass);
    for (const auto& [rank, value] : minus.terms()) row[rank] = r.mul(value, inverse);
    d.witness.push_back(OperatorMatrix{plus.domain(), std::vector<std::vector<Element>>(n, row)});
  }
  return d;
}

ObstructionResult generalized_obstruction(const EmpiricalModel& m, int j0, const JointEvent& event,
                                          std::uint64_t cutoff) {
  const SemiringSpec& r = m.semiring();
  if (!r.has_division()) {
    throw NotSemifield("generalized obstruction needs a semifield; '" + r.name() + "' has no division");
  }
  const Scenario& s = m.scenario();
  require_event(s, j0, event);
  require_nondisturbing(m);
  const Element mu = m.weight(j0, s.rank(event));
  if (r.is_zero(mu)) throw ZeroMeasureEvent(s.section_label(event) + " has measure zero");

  const Nerve nerve(s, 1);
  ObstructionResult out;
  out.kind = ObstructionKind::Generalized;
  out.semiring = r.name();
  out.base_context = j0;
  out.event = event;
  out.base = FreeVector::basis(s, event, mu);
  out.extension = extend_section(m, j0, out.base);
  out.difference = difference_of(nerve, r, out.extension);

  if (r.is_boolean()) {
    FamilySearch search(m, j0, event);
    if (!search.run()) {
      out.verdict = Verdict::Nontrivial;
      out.certificate = SearchExhausted{search.nodes()};
      return out;
    }
    const JointEvent global{s.all_measurements(), search.assignment()};
    Cochain family{0, {}};
    for (int k = 0; k < s.context_count(); ++k) {
      family.values.push_back(FreeVector::basis(s, restrict_event(global, s.context(k)), r.one()));
    }
    if (!difference_of(nerve, r, family).trivial()) throw Error("internal: glued family is not compatible");
    out.verdict = Verdict::Trivial;
    out.witness = std::move(family);
    return out;
  }

  const PinnedSystem sys = pinned_system(m, j0, event, mu, cutoff);
  if (r.has_negation()) {
    auto b = linalg::solve_rational(sys.a, sys.b);
    if (!b) {
      out.verdict = Verdict::Nontrivial;
      out.certificate = RingInfeasible{"pinned system has no signed solution"};
      return out;
    }
    out.verdict = Verdict::Trivial;
    out.witness = family_from_globals(m, sys, *b);
    out.global_weights = *b;
    return out;
  }
  const lp::Problem problem = pinned_problem(sys);
  const lp::Solution solution = lp::solve(problem);
  if (solution.status != lp::Status::Optimal) {
    out.verdict = Verdict::Nontrivial;
    out.certificate = FarkasCertificate{solution.farkas};
    return out;
  }
  out.verdict = Verdict::Trivial;
  out.witness = family_from_globals(m, sys, solution.x);
  out.global_weights = solution.x;
  return out;
}

bool verify_result(const EmpiricalModel& m, const ObstructionResult& result, std::uint64_t cutoff) {
  const Scenario& s = m.scenario();
  const Nerve nerve(s, 1);
  const SemiringSpec coefficients = semiring_by_name(result.semiring);
  if (result.trivial()) {
    if (!result.witness) return false;
    const Cochain& w = *result.witness;
    if (w.values.size() != static_cast<std::size_t>(s.context_count())) return false;
    for (const auto& v : w.values) {
      for (const auto& [rank, value] : v.terms()) {
        if (!coefficients.contains(value)) return false;
      }
    }
    return w.values[result.base_context] == result.base && is_cocycle(nerve, coefficients, w);
  }
  if (result.kind == ObstructionKind::Classical) {
    return !classical_obstruction(m, result.base_context, result.event, coefficients, result.classical_basis)
                .trivial();
  }
  if (const auto* farkas = std::get_if<FarkasCertificate>(&result.certificate)) {
    const Element mu = m.weight(result.base_context, s.rank(result.event));
    return lp::verify_farkas(pinned_problem(pinned_system(m, result.base_context, result.event, mu, cutoff)),
                             farkas->y);
  }
  return !generalized_obstruction(m, result.base_context, result.event, cutoff).trivial();
}

bool cancellative_bridge_check(const EmpiricalModel& m, int j0, const JointEvent& event) {
  const SemiringSpec& r = m.semiring();
  if (!r.cancellative()) {
    throw NotCancellative("'" + r.name() + "' is not cancellative; it has no ring completion");
  }
  const SemiringSpec ring = make_ring_completion(r);
  const Scenario& s = m.scenario();
  require_event(s, j0, event);
  const Element mu = m.weight(j0, s.rank(event));
  if (r.is_zero(mu)) throw ZeroMeasureEvent(s.section_label(event) + " has measure zero");
  const Nerve nerve(s, 1);
  const Cochain c = extend_section(m, j0, FreeVector::basis(s, event, mu));
  const Cochain z = coboundary_ring(nerve, ring, c);
  const Cochain plus = coboundary_plus(nerve, r, c);
  const Cochain minus = coboundary_minus(nerve, r, c);
  const bool divisible = r.has_division();
  std::optional<DifferenceCochain> d;
  if (divisible) d = difference_of(nerve, r, c);

  bool z_vanishes = true;
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    if (z.values[i] != subtract(ring, plus.values[i], minus.values[i])) return false;
    if (d && d->witness[i]) {
      const FreeVector moved = apply_operator(ring, plus.values[i], *d->witness[i]);
      if (z.values[i] != subtract(ring, plus.values[i], moved)) return false;
    }
    z_vanishes = z_vanishes && z.values[i].is_zero();
  }
  const bool trivial = d ? d->trivial() : plus == minus;
  return z_vanishes == trivial;
}

std::vector<SectionOutcome> obstruction_sweep(const EmpiricalModel& m, const SweepOptions& options) {
  const Scenario& s = m.scenario();
  require_nondisturbing(m);
  const Nerve nerve(s, 1);
  std::vector<SectionOutcome> out;
  for (int k = 0; k < s.context_count(); ++k) {
    const std::uint64_t n = s.event_count(s.context(k));
    for (std::uint64_t rank = 0; rank < n; ++rank) {
      SectionOutcome row;
      row.context = k;
      row.event = rank;
      row.zero_measure = !m.supported(k, rank);
      const JointEvent event = s.unrank(s.context(k), rank);
      if (options.classical) {
        if (row.zero_measure && options.classical_basis == ClassicalBasis::Support) {
          row.classical = zero_measure_result(nerve, ObstructionKind::Classical, options.classical_ring.name(), k,
                                              event);
          row.classical->classical_basis = options.classical_basis;
        } else {
          row.classical = classical_obstruction(m, k, event, options.classical_ring, options.classical_basis);
        }
      }
      if (options.generalized) {
        row.generalized = row.zero_measure
                              ? zero_measure_result(nerve, ObstructionKind::Generalized, m.semiring().name(), k, event)
                              : generalized_obstruction(m, k, event, options.cutoff);
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace semicech
