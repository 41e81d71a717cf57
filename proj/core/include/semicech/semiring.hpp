#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "semicech/rational.hpp"

namespace semicech {

/// Every semiring element is carried as an exact rational; the owning
/// SemiringSpec decides which rationals are members and how they combine.
using Element = Rational;

enum class SemiringKind { Boolean, Natural, Integer, NonnegRational, Rational, Custom };

/// Capability flags and exact operations of a (commutative) semiring.
///
/// Specs are cheap to copy and immutable once built. `with_add` / `with_mul`
/// produce modified copies; they exist so that broken specs can be fed to
/// axiom_check.
class SemiringSpec {
 public:
  using BinaryOp = std::function<Element(const Element&, const Element&)>;
  using Predicate = std::function<bool(const Element&)>;

  struct Flags {
    bool cancellative = false;
    bool has_negation = false;
    bool has_division = false;
  };

  SemiringSpec(std::string name, SemiringKind kind, Flags flags, BinaryOp add, BinaryOp mul,
               Predicate contains);

  const std::string& name() const noexcept { return name_; }
  SemiringKind kind() const noexcept { return kind_; }
  bool cancellative() const noexcept { return flags_.cancellative; }
  bool has_negation() const noexcept { return flags_.has_negation; }
  bool has_division() const noexcept { return flags_.has_division; }
  bool is_boolean() const noexcept { return kind_ == SemiringKind::Boolean; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element add(const Element& a, const Element& b) const { return add_(a, b); }
  Element mul(const Element& a, const Element& b) const { return mul_(a, b); }
  bool contains(const Element& a) const { return contains_(a); }
  bool is_zero(const Element& a) const { return a == zero(); }

  /// Additive inverse, or nullopt when the spec has no negation.
  std::optional<Element> try_negate(const Element& a) const;
  /// Throws NoNegation when unavailable.
  Element negate(const Element& a) const;
  /// Multiplicative inverse of a nonzero element; throws NotSemifield when the
  /// spec has no division and std::domain_error for zero.
  Element inv(const Element& a) const;

  Element sum(std::span<const Element> values) const;

  /// Throws NotAnElement when `a` is outside the carrier.
  const Element& require(const Element& a) const;

  SemiringSpec with_add(BinaryOp add) const;
  SemiringSpec with_mul(BinaryOp mul) const;

 private:
  std::string name_;
  SemiringKind kind_;
  Flags flags_;
  BinaryOp add_;
  BinaryOp mul_;
  Predicate contains_;
};

SemiringSpec make_boolean();
SemiringSpec make_natural();
SemiringSpec make_integer();
SemiringSpec make_nonneg_rational();
SemiringSpec make_rational();

/// Ring of formal differences of a cancellative semiring (N -> Z, Q+ -> Q).
/// Throws NotCancellative otherwise.
SemiringSpec make_ring_completion(const SemiringSpec& s);

/// "boolean" | "natural" | "integer" | "nonneg-rational" | "rational".
SemiringSpec semiring_by_name(const std::string& name);

using ElementTriple = std::array<Element, 3>;

struct AxiomViolation {
  std::string axiom;
  ElementTriple witness;
};

/// Evaluates every semiring axiom (plus negation / inverse / cancellation
/// when the flags claim them) on each sample triple (a, b, c).
std::vector<AxiomViolation> axiom_check(const SemiringSpec& s, std::span<const ElementTriple> samples);

/// Random member of the carrier. Rationals are drawn with denominators up to
/// `max_denominator` and numerators bounded by `max_numerator` in magnitude.
Element sample_element(const SemiringSpec& s, std::mt19937_64& rng, int max_numerator = 6,
                       int max_denominator = 6);

std::vector<ElementTriple> sample_triples(const SemiringSpec& s, std::size_t count,
                                          std::mt19937_64& rng);

/// All 8 triples over {0, 1}.
std::vector<ElementTriple> boolean_triples();

}  // namespace semicech
