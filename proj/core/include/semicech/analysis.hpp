#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semicech/model.hpp"
#include "semicech/obstruction.hpp"

namespace semicech {

enum class Contextuality { Noncontextual, Contextual };

const char* to_string(Contextuality c);

/// Hidden-variable model: one weight per global section, indexed by
/// global rank.
using GlobalWeights = std::vector<Element>;

struct ContextualityVerdict {
  std::string semiring;
  Contextuality verdict = Contextuality::Noncontextual;
  /// Noncontextual: weights over global sections assembled from the
  /// per-section witnesses.
  std::optional<GlobalWeights> distribution;
  /// Contextual: first section (scenario order) with nontrivial obstruction.
  std::optional<SectionOutcome> witness;
  /// Generalized obstruction of every (context, event).
  std::vector<SectionOutcome> sections;

  bool contextual() const { return verdict == Contextuality::Contextual; }
};

/// Sweeps every section with generalized_obstruction; contextual iff one is
/// nontrivial. Throws Disturbing, NotSemifield, TooLarge.
ContextualityVerdict is_r_contextual(const EmpiricalModel& m, std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// Every table entry equals the semiring sum of the weights of the global
/// sections restricting to it, and the weights sum to 1.
bool realizes(const EmpiricalModel& m, const GlobalWeights& weights);

/// M b = p with b in the semiring and sum b = 1. Boolean: the set of all
/// support-consistent global sections (the largest candidate). Q+: exact
/// LP. Q: exact linear solve. Throws Disturbing, TooLarge, NotSemifield.
std::optional<GlobalWeights> noncontextual_decompose(const EmpiricalModel& m,
                                                     std::uint64_t cutoff = kDefaultEnumerationCutoff);

struct FractionResult {
  Rational value;             // 1 - sum b
  GlobalWeights weights;      // optimal b
  std::vector<Rational> residual;  // p - M b, incidence-row order
  std::vector<Rational> dual;      // y >= 0 with M^T y >= 1 and p.y = sum b
  bool certified = false;          // primal/dual pair verified exactly
};

/// max sum b subject to M b <= p, b >= 0. Requires nonnegative rational
/// coefficients. Throws Disturbing, TooLarge, NotSemifield.
FractionResult contextual_fraction(const EmpiricalModel& m, std::uint64_t cutoff = kDefaultEnumerationCutoff);

struct SignedRealization {
  GlobalWeights weights;
  bool exact = false;  // M b = p and sum b = 1 hold exactly
};

/// Basic solution of M b = p, sum b = 1 without sign constraints. Throws
/// Disturbing, TooLarge, NotSemifield (non-rational coefficients).
SignedRealization signed_realization(const EmpiricalModel& m, std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// Support of the model as a Boolean model.
EmpiricalModel possibilistic_collapse(const EmpiricalModel& m);

}  // namespace semicech
