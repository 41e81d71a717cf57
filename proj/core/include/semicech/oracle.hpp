#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "semicech/model.hpp"

namespace semicech {

/// Brute-force answer to "does mu(event)[event] extend to a compatible
/// family built from global sections", computed without the cochain
/// machinery.
struct OracleVerdict {
  bool extendable = false;
  /// Boolean: a support-consistent global assignment through the event.
  std::optional<JointEvent> global;
  /// Semifields: weights over global sections (incidence column order)
  /// satisfying M b = p and the pin.
  std::vector<Rational> weights;
  /// Global sections (Boolean) or column bases (otherwise) examined.
  std::uint64_t examined = 0;
};

/// Every global assignment restricting into the support and onto `event`.
OracleVerdict boolean_oracle(const EmpiricalModel& m, int j0, const JointEvent& event,
                             std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// Basic solutions of [M; pin] b = [p; mu(event)]: enumerates column bases
/// and accepts the first one whose solution is nonnegative (or any, when
/// `signed_weights`) and satisfies every row exactly.
OracleVerdict basis_oracle(const EmpiricalModel& m, int j0, const JointEvent& event, bool signed_weights = false,
                           std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// Dispatch on the model's semiring. Events of measure zero are extendable
/// by the zero family.
OracleVerdict extendability_oracle(const EmpiricalModel& m, int j0, const JointEvent& event,
                                   std::uint64_t cutoff = kDefaultEnumerationCutoff);

}  // namespace semicech
