#pragma once

#include <optional>
#include <vector>

#include "semicech/rational.hpp"

namespace semicech::linalg {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
std::vector<std::size_t> row_reduce(RationalMatrix& a);

std::size_t rank(RationalMatrix a);

/// One solution of A x = b over Q, with every non-pivot variable set to 0
/// (so the support is at most rank(A)). nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_rational(const RationalMatrix& a, const std::vector<Rational>& b);

/// One solution of A x = b over Z, or nullopt when none exists. Uses
/// unimodular column reduction of A to lower echelon form.
std::optional<std::vector<Integer>> solve_integer(const IntegerMatrix& a, const std::vector<Integer>& b);

/// Solves B^T y = c for a square nonsingular B; used for LP duals.
std::vector<Rational> solve_transposed(const RationalMatrix& b, const std::vector<Rational>& c);

}  // namespace semicech::linalg
