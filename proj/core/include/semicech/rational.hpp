#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace semicech {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p/q", "p" or "-p/q" (no whitespace, q > 0). Returns nullopt on
/// anything else.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" in lowest terms otherwise.
std::string format_rational(const Rational& value);

inline bool is_integral(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

}  // namespace semicech
