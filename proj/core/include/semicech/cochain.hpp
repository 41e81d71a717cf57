#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "semicech/free_vector.hpp"
#include "semicech/model.hpp"
#include "semicech/scenario.hpp"
#include "semicech/semiring.hpp"

namespace semicech {

/// Assignment of a free-(semi)module vector over |sigma| to every
/// q-simplex sigma of a nerve, aligned with Nerve::simplices(q).
struct Cochain {
  int degree = 0;
  std::vector<FreeVector> values;

  bool operator==(const Cochain&) const = default;
};

Cochain zero_cochain(const Nerve& nerve, int q);

/// The model's context measures as a 0-cochain.
Cochain model_cochain(const EmpiricalModel& m, const Nerve& nerve);

/// Random q-cochain; each value has up to `max_terms` nonzero coefficients
/// drawn with sample_element.
Cochain random_cochain(const Nerve& nerve, const SemiringSpec& r, int q, std::mt19937_64& rng,
                       int max_terms = 3);

/// Alternating sum of pushed faces. Requires negation (NoNegation otherwise).
Cochain coboundary_ring(const Nerve& nerve, const SemiringSpec& ring, const Cochain& c);
/// Sum over even faces.
Cochain coboundary_plus(const Nerve& nerve, const SemiringSpec& r, const Cochain& c);
/// Sum over odd faces.
Cochain coboundary_minus(const Nerve& nerve, const SemiringSpec& r, const Cochain& c);

/// d+ d+ c + d- d- c == d- d+ c + d+ d- c on this cochain.
bool four_term_holds(const Nerve& nerve, const SemiringSpec& r, const Cochain& c);
/// d d c == 0 (ring coefficients).
bool dd_vanishes(const Nerve& nerve, const SemiringSpec& ring, const Cochain& c);

/// Samples `trials` random q-cochains and checks the four-term condition on
/// each. Over rings the condition is checked together with d d = 0.
bool complex_condition_check(const Nerve& nerve, const SemiringSpec& r, int q, std::size_t trials,
                             std::mt19937_64& rng);

/// d+ c == d- c componentwise.
bool is_cocycle(const Nerve& nerve, const SemiringSpec& r, const Cochain& c);

/// Sub-presheaf of events generating the coefficient (semi)module at each
/// context: either all of O^U or the support of a model.
class EventPresheaf {
 public:
  static EventPresheaf full(const Scenario& s);
  static EventPresheaf support(const EmpiricalModel& m);

  bool allows(int context, std::uint64_t rank) const { return allowed_.at(context).at(rank); }
  /// Allowed event ranks of a context, increasing.
  std::vector<std::uint64_t> basis(int context) const;
  bool is_full() const { return full_; }

 private:
  bool full_ = true;
  std::vector<std::vector<bool>> allowed_;
};

/// Degree-0 membership in H0 = Z0: a compatible family.
bool in_zeroth_cohomology(const Nerve& nerve, const SemiringSpec& r, const Cochain& c);

/// Every 0-cochain choosing one allowed event (coefficient 1_R) per context
/// that is a cocycle. Throws TooLarge past `cutoff` candidate families.
std::vector<Cochain> enumerate_basis_families(const Nerve& nerve, const EventPresheaf& presheaf,
                                              const SemiringSpec& r,
                                              std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// Glues a compatible single-event family into the unique global
/// assignment it determines; nullopt when the family is not compatible or
/// a value is not a single event.
std::optional<JointEvent> glue_family(const Nerve& nerve, const Cochain& family);

/// The context U_{j0} whose relative presheaf (kernel of restriction to
/// U_{j0}) is being probed.
struct RelativeMask {
  int excluded_context = 0;
};

/// Ring cochains: every value restricted to U_{j0} ∩ |sigma| vanishes (total
/// mass when the intersection is empty).
bool relative_member(const Nerve& nerve, const SemiringSpec& r, const Cochain& c, RelativeMask mask);

/// Dense operator on the free module over O^V. Acts on row vectors:
/// (v . g)_j = sum_i v_i g_ij.
struct OperatorMatrix {
  MeasurementSet domain;
  std::vector<std::vector<Element>> rows;

  bool operator==(const OperatorMatrix&) const = default;
};

OperatorMatrix identity_operator(const Scenario& s, const SemiringSpec& r, MeasurementSet domain);
FreeVector apply_operator(const SemiringSpec& r, const FreeVector& v, const OperatorMatrix& g);
/// Every row sums to 1_R.
bool is_row_stochastic(const SemiringSpec& r, const OperatorMatrix& g);

/// A 0-cochain together with its two coboundaries and, per 1-simplex, an
/// optional row R-stochastic operator g with d+c(sigma) . g = d-c(sigma).
struct DifferenceCochain {
  Cochain base;
  Cochain plus;
  Cochain minus;
  std::vector<std::optional<OperatorMatrix>> witness;

  /// plus == minus, i.e. the class of the identity.
  bool trivial() const { return plus == minus; }
};

/// Difference cochains: the restrictions of plus and minus to
/// U_{j0} ∩ |sigma| agree on every simplex.
bool relative_member(const Nerve& nerve, const SemiringSpec& r, const DifferenceCochain& d, RelativeMask mask);

}  // namespace semicech
