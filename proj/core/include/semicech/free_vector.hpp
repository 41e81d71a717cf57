#pragma once

#include <cstdint>
#include <map>

#include "semicech/scenario.hpp"
#include "semicech/semiring.hpp"

namespace semicech {

/// Finite formal R-combination of joint events over one measurement set,
/// i.e. an element of the free (semi)module on O^V. Coefficients are keyed
/// by event rank; zero coefficients are never stored.
class FreeVector {
 public:
  FreeVector() = default;
  explicit FreeVector(MeasurementSet domain) : domain_(domain) {}

  /// coefficient * [event]
  static FreeVector basis(const Scenario& s, const JointEvent& event, const Element& coefficient);

  MeasurementSet domain() const { return domain_; }
  const std::map<std::uint64_t, Element>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Element coefficient(std::uint64_t rank) const;

  /// Adds `value` to the coefficient of `rank` using the semiring's addition.
  void accumulate(const SemiringSpec& r, std::uint64_t rank, const Element& value);
  /// Semiring sum of all coefficients.
  Element mass(const SemiringSpec& r) const;

  bool operator==(const FreeVector&) const = default;

 private:
  MeasurementSet domain_;
  std::map<std::uint64_t, Element> terms_;
};

/// Coefficientwise semiring sum; domains must match.
FreeVector add(const SemiringSpec& r, const FreeVector& a, const FreeVector& b);
/// scalar * v
FreeVector scale(const SemiringSpec& r, const Element& scalar, const FreeVector& v);
/// a - b, requires negation.
FreeVector subtract(const SemiringSpec& r, const FreeVector& a, const FreeVector& b);

/// Linear extension of event restriction: the coefficient of t is the sum of
/// the coefficients of all events restricting to t. Throws NotSubset.
FreeVector push_vector(const Scenario& s, const SemiringSpec& r, const FreeVector& v, MeasurementSet target);

}  // namespace semicech
