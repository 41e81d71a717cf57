#include "semicech/analysis.hpp"

#include "semicech/errors.hpp"
#include "semicech/linalg.hpp"
#include "semicech/lp.hpp"

namespace semicech {

const char* to_string(Contextuality c) { return c == Contextuality::Contextual ? "contextual" : "noncontextual"; }

namespace {

void require_nondisturbing(const EmpiricalModel& m) {
  const auto check = is_nondisturbing(m);
  if (check) return;
  const auto& w = *check.witness;
  const Scenario& s = m.scenario();
  throw Disturbing("contexts {" + s.set_label(s.context(w.first)) + "} and {" + s.set_label(s.context(w.second)) +
                   "} disagree on " + s.section_label(w.event));
}

linalg::RationalMatrix incidence_rows(const IncidenceMatrix& im) {
  linalg::RationalMatrix a;
  a.reserve(im.entries.size());
  for (const auto& row : im.entries) a.emplace_back(row.begin(), row.end());
  return a;
}

}  // namespace

ContextualityVerdict is_r_contextual(const EmpiricalModel& m, std::uint64_t cutoff) {
  const SemiringSpec& r = m.semiring();
  if (!r.has_division()) {
    throw NotSemifield("contextuality verdicts need a semifield; '" + r.name() + "' has no division");
  }
  SweepOptions options;
  options.classical = false;
  options.cutoff = cutoff;
  ContextualityVerdict out;
  out.semiring = r.name();
  out.sections = obstruction_sweep(m, options);
  for (const auto& row : out.sections) {
    if (!row.generalized->trivial()) {
      out.verdict = Contextuality::Contextual;
      out.witness = row;
      return out;
    }
  }

  const Scenario& s = m.scenario();
  const Nerve nerve(s, 1);
  const std::uint64_t globals = global_sections(s, cutoff).size();
  GlobalWeights weights(globals, r.zero());
  for (const auto& row : out.sections) {
    if (row.zero_measure) continue;
    const ObstructionResult& result = *row.generalized;
    if (r.is_boolean()) {
      const auto glued = glue_family(nerve, *result.witness);
      if (!glued) throw Error("internal: Boolean witness family does not glue");
      weights[s.rank(*glued)] = r.one();
    } else {
      weights = result.global_weights;
      break;
    }
  }
  out.distribution = std::move(weights);
  return out;
}

bool realizes(const EmpiricalModel& m, const GlobalWeights& weights) {
  const Scenario& s = m.scenario();
  const SemiringSpec& r = m.semiring();
  const auto globals = global_sections(s);
  if (weights.size() != globals.size()) return false;
  for (const auto& w : weights) {
    if (!r.contains(w)) return false;
  }
  if (r.sum(weights) != r.one()) return false;
  for (int k = 0; k < s.context_count(); ++k) {
    std::vector<Element> pushed(s.event_count(s.context(k)), r.zero());
    for (std::size_t g = 0; g < globals.size(); ++g) {
      if (r.is_zero(weights[g])) continue;
      auto& slot = pushed[s.rank(restrict_event(globals[g], s.context(k)))];
      slot = r.add(slot, weights[g]);
    }
    if (pushed != m.table(k)) return false;
  }
  return true;
}

std::optional<GlobalWeights> noncontextual_decompose(const EmpiricalModel& m, std::uint64_t cutoff) {
  const SemiringSpec& r = m.semiring();
  if (!r.has_division()) {
    throw NotSemifield("decomposition is implemented over semifields; '" + r.name() + "' has no division");
  }
  require_nondisturbing(m);
  const Scenario& s = m.scenario();
  const IncidenceMatrix im = incidence_matrix(s, cutoff);
  const std::vector<Element> p = model_vector(m);

  if (r.is_boolean()) {
    // Boolean sums are monotone: if any set of global sections reproduces
    // the support, so does the set of all support-consistent ones.
    GlobalWeights weights(im.columns.size(), r.zero());
    std::vector<bool> covered(im.rows.size(), false);
    for (std::size_t g = 0; g < im.columns.size(); ++g) {
      bool inside = true;
      for (std::size_t i = 0; i < im.rows.size() && inside; ++i) {
        inside = !(im.entries[i][g] && r.is_zero(p[i]));
      }
      if (!inside) continue;
      weights[g] = r.one();
      for (std::size_t i = 0; i < im.rows.size(); ++i) {
        if (im.entries[i][g]) covered[i] = true;
      }
    }
    for (std::size_t i = 0; i < im.rows.size(); ++i) {
      if (!r.is_zero(p[i]) && !covered[i]) return std::nullopt;
    }
    return weights;
  }

  linalg::RationalMatrix a = incidence_rows(im);
  std::vector<Rational> b(p.begin(), p.end());
  a.emplace_back(im.columns.size(), Rational(1));
  b.emplace_back(1);
  if (r.has_negation()) return linalg::solve_rational(a, b);

  lp::Problem problem{a, b, std::vector<lp::Sense>(b.size(), lp::Sense::Equal),
                      std::vector<Rational>(im.columns.size(), Rational(0))};
  const lp::Solution solution = lp::solve(problem);
  if (solution.status != lp::Status::Optimal) return std::nullopt;
  return solution.x;
}

FractionResult contextual_fraction(const EmpiricalModel& m, std::uint64_t cutoff) {
  const SemiringSpec& r = m.semiring();
  if (r.is_boolean() || r.has_negation() || !r.has_division()) {
    throw NotSemifield("contextual fraction needs nonnegative rational coefficients, not '" + r.name() + "'");
  }
  require_nondisturbing(m);
  const IncidenceMatrix im = incidence_matrix(m.scenario(), cutoff);
  const std::vector<Element> p = model_vector(m);
  lp::Problem problem{incidence_rows(im), std::vector<Rational>(p.begin(), p.end()),
                      std::vector<lp::Sense>(p.size(), lp::Sense::LessEqual),
                      std::vector<Rational>(im.columns.size(), Rational(1))};
  const lp::Solution solution = lp::solve(problem);
  if (solution.status != lp::Status::Optimal) throw Error("internal: fraction LP is not optimal");

  FractionResult out;
  out.value = Rational(1) - solution.objective_value;
  out.weights = solution.x;
  out.dual = solution.dual;
  out.certified = lp::verify_optimal(problem, solution);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational used = 0;
    for (std::size_t g = 0; g < solution.x.size(); ++g) {
      if (im.entries[i][g]) used += solution.x[g];
    }
    out.residual.push_back(p[i] - used);
  }
  return out;
}

SignedRealization signed_realization(const EmpiricalModel& m, std::uint64_t cutoff) {
  if (m.semiring().is_boolean()) {
    throw NotSemifield("signed realization needs rational coefficients, not '" + m.semiring().name() + "'");
  }
  require_nondisturbing(m);
  const IncidenceMatrix im = incidence_matrix(m.scenario(), cutoff);
  const std::vector<Element> p = model_vector(m);
  linalg::RationalMatrix a = incidence_rows(im);
  std::vector<Rational> b(p.begin(), p.end());
  a.emplace_back(im.columns.size(), Rational(1));
  b.emplace_back(1);
  const auto solution = linalg::solve_rational(a, b);
  if (!solution) throw Error("internal: non-disturbing model without a signed realization");

  SignedRealization out;
  out.weights = *solution;
  out.exact = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t g = 0; g < out.weights.size(); ++g) {
      if (a[i][g] != 0) lhs += a[i][g] * out.weights[g];
    }
    out.exact = out.exact && lhs == b[i];
  }
  return out;
}

EmpiricalModel possibilistic_collapse(const EmpiricalModel& m) {
  const SemiringSpec boolean = make_boolean();
  std::vector<std::vector<Element>> tables;
  for (int k = 0; k < m.scenario().context_count(); ++k) {
    std::vector<Element> t;
    for (const auto& v : m.table(k)) t.push_back(m.semiring().is_zero(v) ? boolean.zero() : boolean.one());
    tables.push_back(std::move(t));
  }
  return make_model_dense(m.scenario(), boolean, tables);
}

}  // namespace semicech
