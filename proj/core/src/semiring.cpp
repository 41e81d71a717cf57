#include "semicech/semiring.hpp"

#include <charconv>
#include <stdexcept>
#include <utility>

#include "semicech/errors.hpp"

namespace semicech {

std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view digits, bool allow_sign) -> std::optional<Integer> {
    if (digits.empty()) return std::nullopt;
    std::size_t start = 0;
    if (allow_sign && digits[0] == '-') start = 1;
    if (start == digits.size()) return std::nullopt;
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9') return std::nullopt;
    }
    return Integer(std::string(digits));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text, true);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash), true);
  auto d = parse_int(text.substr(slash + 1), false);
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

std::string format_rational(const Rational& value) {
  if (is_integral(value)) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

SemiringSpec::SemiringSpec(std::string name, SemiringKind kind, Flags flags, BinaryOp add,
                           BinaryOp mul, Predicate contains)
    : name_(std::move(name)),
      kind_(kind),
      flags_(flags),
      add_(std::move(add)),
      mul_(std::move(mul)),
      contains_(std::move(contains)) {}

std::optional<Element> SemiringSpec::try_negate(const Element& a) const {
  if (!flags_.has_negation) return std::nullopt;
  return Element(-a);
}

Element SemiringSpec::negate(const Element& a) const {
  if (!flags_.has_negation) throw NoNegation("semiring '" + name_ + "' has no additive inverses");
  return -a;
}

Element SemiringSpec::inv(const Element& a) const {
  if (!flags_.has_division) throw NotSemifield("semiring '" + name_ + "' has no division");
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  if (kind_ == SemiringKind::Boolean) return one();
  return Element(1) / a;
}

Element SemiringSpec::sum(std::span<const Element> values) const {
  Element total = zero();
  for (const auto& v : values) total = add(total, v);
  return total;
}

const Element& SemiringSpec::require(const Element& a) const {
  if (!contains(a)) {
    throw NotAnElement(format_rational(a) + " is not an element of '" + name_ + "'");
  }
  return a;
}

SemiringSpec SemiringSpec::with_add(BinaryOp add) const {
  SemiringSpec copy = *this;
  copy.add_ = std::move(add);
  copy.kind_ = SemiringKind::Custom;
  return copy;
}

SemiringSpec SemiringSpec::with_mul(BinaryOp mul) const {
  SemiringSpec copy = *this;
  copy.mul_ = std::move(mul);
  copy.kind_ = SemiringKind::Custom;
  return copy;
}

namespace {

Element plain_add(const Element& a, const Element& b) { return a + b; }
Element plain_mul(const Element& a, const Element& b) { return a * b; }

}  // namespace

SemiringSpec make_boolean() {
  return SemiringSpec(
      "boolean", SemiringKind::Boolean,
      {.cancellative = false, .has_negation = false, .has_division = true},
      [](const Element& a, const Element& b) { return (a != 0 || b != 0) ? Element(1) : Element(0); },
      [](const Element& a, const Element& b) { return (a != 0 && b != 0) ? Element(1) : Element(0); },
      [](const Element& a) { return a == 0 || a == 1; });
}

SemiringSpec make_natural() {
  return SemiringSpec("natural", SemiringKind::Natural,
                      {.cancellative = true, .has_negation = false, .has_division = false},
                      plain_add, plain_mul,
                      [](const Element& a) { return a >= 0 && is_integral(a); });
}

SemiringSpec make_integer() {
  return SemiringSpec("integer", SemiringKind::Integer,
                      {.cancellative = true, .has_negation = true, .has_division = false},
                      plain_add, plain_mul, [](const Element& a) { return is_integral(a); });
}

SemiringSpec make_nonneg_rational() {
  return SemiringSpec("nonneg-rational", SemiringKind::NonnegRational,
                      {.cancellative = true, .has_negation = false, .has_division = true},
                      plain_add, plain_mul, [](const Element& a) { return a >= 0; });
}

SemiringSpec make_rational() {
  return SemiringSpec("rational", SemiringKind::Rational,
                      {.cancellative = true, .has_negation = true, .has_division = true},
                      plain_add, plain_mul, [](const Element&) { return true; });
}

SemiringSpec make_ring_completion(const SemiringSpec& s) {
  if (!s.cancellative()) {
    throw NotCancellative("semiring '" + s.name() +
                          "' is not cancellative and has no ring of differences");
  }
  switch (s.kind()) {
    case SemiringKind::Natural:
    case SemiringKind::Integer:
      return make_integer();
    case SemiringKind::NonnegRational:
    case SemiringKind::Rational:
      return make_rational();
    default:
      throw NotCancellative("no known ring completion for '" + s.name() + "'");
  }
}

SemiringSpec semiring_by_name(const std::string& name) {
  if (name == "boolean") return make_boolean();
  if (name == "natural") return make_natural();
  if (name == "integer") return make_integer();
  if (name == "nonneg-rational") return make_nonneg_rational();
  if (name == "rational") return make_rational();
  throw UnknownSemiring("unknown semiring '" + name + "'");
}

std::vector<AxiomViolation> axiom_check(const SemiringSpec& s, std::span<const ElementTriple> samples) {
  std::vector<AxiomViolation> report;
  const Element zero = s.zero();
  const Element one = s.one();
  for (const auto& t : samples) {
    const auto& [a, b, c] = t;
    auto fail = [&](const char* axiom) { report.push_back({axiom, t}); };
    if (!s.contains(s.add(a, b)) || !s.contains(s.mul(a, b))) fail("closure");
    if (s.add(s.add(a, b), c) != s.add(a, s.add(b, c))) fail("additive associativity");
    if (s.add(a, b) != s.add(b, a)) fail("additive commutativity");
    if (s.add(zero, a) != a || s.add(a, zero) != a) fail("additive identity");
    if (s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c))) fail("multiplicative associativity");
    if (s.mul(one, a) != a || s.mul(a, one) != a) fail("multiplicative identity");
    if (s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c))) fail("left distributivity");
    if (s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c))) fail("right distributivity");
    if (s.mul(a, zero) != zero || s.mul(zero, a) != zero) fail("annihilation");
    if (s.has_negation() && s.add(a, s.negate(a)) != zero) fail("negation");
    if (s.has_division() && !s.is_zero(a) && s.mul(a, s.inv(a)) != one) fail("inverse");
    if (s.cancellative() && s.add(a, c) == s.add(b, c) && a != b) fail("cancellation");
  }
  return report;
}

Element sample_element(const SemiringSpec& s, std::mt19937_64& rng, int max_numerator,
                       int max_denominator) {
  std::uniform_int_distribution<int> num(-max_numerator, max_numerator);
  std::uniform_int_distribution<int> den(1, max_denominator);
  std::uniform_int_distribution<int> bit(0, 1);
  switch (s.kind()) {
    case SemiringKind::Boolean:
      return Element(bit(rng));
    case SemiringKind::Natural: {
      int n = num(rng);
      return Element(n < 0 ? -n : n);
    }
    case SemiringKind::Integer:
      return Element(num(rng));
    case SemiringKind::NonnegRational: {
      int n = num(rng);
      return Element(n < 0 ? -n : n, den(rng));
    }
    case SemiringKind::Rational:
      return Element(num(rng), den(rng));
    case SemiringKind::Custom:
      break;
  }
  // Custom specs: draw rationals until one lands in the carrier, falling
  // back to the identities.
  for (int attempt = 0; attempt < 64; ++attempt) {
    Element candidate(num(rng), den(rng));
    if (s.contains(candidate)) return candidate;
  }
  return bit(rng) ? s.one() : s.zero();
}

std::vector<ElementTriple> sample_triples(const SemiringSpec& s, std::size_t count,
                                          std::mt19937_64& rng) {
  std::vector<ElementTriple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({sample_element(s, rng), sample_element(s, rng), sample_element(s, rng)});
  }
  return out;
}

std::vector<ElementTriple> boolean_triples() {
  std::vector<ElementTriple> out;
  for (int bits = 0; bits < 8; ++bits) {
    out.push_back({Element(bits & 1), Element((bits >> 1) & 1), Element((bits >> 2) & 1)});
  }
  return out;
}

}  // namespace semicech
