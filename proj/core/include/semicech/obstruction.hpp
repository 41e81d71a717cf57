#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semicech/cochain.hpp"
#include "semicech/model.hpp"

namespace semicech {

enum class Verdict { Trivial, Nontrivial };
enum class ObstructionKind { Classical, Generalized };

const char* to_string(Verdict v);

/// The depth-first search over single-event families ran out of candidates.
struct SearchExhausted {
  std::uint64_t nodes = 0;
};

/// Farkas vector for the pinned system: one entry per incidence row, then
/// the pin row last.
struct FarkasCertificate {
  std::vector<Rational> y;
};

/// The exact linear system z = d u (classical) or M b = p (signed) has no
/// solution.
struct RingInfeasible {
  std::string detail;
};

using Certificate = std::variant<std::monostate, SearchExhausted, FarkasCertificate, RingInfeasible>;

/// Which events the classical coefficient modules are generated by.
enum class ClassicalBasis { FullEvents, Support };

struct ObstructionResult {
  ObstructionKind kind = ObstructionKind::Generalized;
  /// Coefficients: the ring (classical) or the model's semifield.
  std::string semiring;
  ClassicalBasis classical_basis = ClassicalBasis::FullEvents;
  int base_context = 0;
  JointEvent event;
  FreeVector base;
  Verdict verdict = Verdict::Trivial;
  /// Compatible family with value `base` at `base_context` (trivial only).
  std::optional<Cochain> witness;
  Certificate certificate;
  /// Canonical extension of the base section.
  Cochain extension;
  /// Classical only: z = d c, with c the extension.
  std::optional<Cochain> cocycle;
  /// Generalized only.
  std::optional<DifferenceCochain> difference;
  /// Generalized, non-Boolean, trivial: weights over global sections (by
  /// global rank) solving the pinned system.
  std::vector<Element> global_weights;
  /// The section has measure zero; the zero family witnesses triviality.
  bool zero_measure = false;

  bool trivial() const { return verdict == Verdict::Trivial; }
};

/// Canonical extension of a single scaled event c0 on context j0: every
/// other context gets the lexicographically least supported event agreeing
/// with c0 on the intersection (falling back to events allowed by
/// `presheaf` when none is supported), with c0's coefficient.
/// Throws Disturbing, NoAgreeingSection, UnknownEvent (c0 not a single
/// event of U_{j0}).
Cochain extend_section(const EmpiricalModel& m, int j0, const FreeVector& c0);
Cochain extend_section(const EmpiricalModel& m, int j0, const FreeVector& c0, const EventPresheaf& presheaf);

/// Ring-coefficient obstruction of 1*[event] in C^0 of the chosen event
/// presheaf. Decides z = d u for u in the relative complex of j0 by exact
/// integer (no division) or rational elimination. Throws NoNegation,
/// Disturbing, ZeroMeasureEvent (support basis, unsupported event).
ObstructionResult classical_obstruction(const EmpiricalModel& m, int j0, const JointEvent& event,
                                        const SemiringSpec& ring,
                                        ClassicalBasis basis = ClassicalBasis::FullEvents);

/// d+c, d-c and a canonical row-stochastic witness per 1-simplex.
/// Throws NotSemifield.
DifferenceCochain difference_of(const Nerve& nerve, const SemiringSpec& r, const Cochain& c);

/// Decides whether mu(event)*[event] extends to a compatible family of the
/// model's measure-weighted sections. Boolean coefficients: depth-first
/// search over supported single-event families. Other semifields: the
/// pinned system M b = p, sum over globals through the event = mu(event),
/// with b >= 0 unless the semifield has negation.
/// Throws NotSemifield, Disturbing, ZeroMeasureEvent, TooLarge.
ObstructionResult generalized_obstruction(const EmpiricalModel& m, int j0, const JointEvent& event,
                                          std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// Result invariants: a trivial witness is a cocycle equal to the base at
/// j0; a nontrivial certificate verifies (Farkas) or reproduces (search,
/// ring solve).
bool verify_result(const EmpiricalModel& m, const ObstructionResult& result,
                   std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// In the ring completion: z = d c equals d+c - d-c and (Id - g) d+c on
/// every 1-simplex, and z vanishes iff the difference cochain is trivial.
/// Throws NotCancellative, Disturbing, ZeroMeasureEvent.
bool cancellative_bridge_check(const EmpiricalModel& m, int j0, const JointEvent& event);

struct SweepOptions {
  bool classical = true;
  bool generalized = true;
  SemiringSpec classical_ring = make_integer();
  ClassicalBasis classical_basis = ClassicalBasis::FullEvents;
  std::uint64_t cutoff = kDefaultEnumerationCutoff;
};

/// One row per (context, event), contexts in scenario order and events in
/// rank order.
struct SectionOutcome {
  int context = 0;
  std::uint64_t event = 0;
  bool zero_measure = false;
  std::optional<ObstructionResult> classical;
  std::optional<ObstructionResult> generalized;
};

std::vector<SectionOutcome> obstruction_sweep(const EmpiricalModel& m, const SweepOptions& options = {});

}  // namespace semicech
