#pragma once

#include <vector>

#include "semicech/linalg.hpp"
#include "semicech/rational.hpp"

namespace semicech::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

/// maximize objective . x  subject to  a x (senses) b,  x >= 0.
struct Problem {
  linalg::RationalMatrix a;
  std::vector<Rational> b;
  std::vector<Sense> senses;
  std::vector<Rational> objective;  // one entry per variable, all zero for feasibility
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational objective_value = 0;
  /// Optimal dual: y_i >= 0 on <= rows, y_i <= 0 on >= rows, a^T y >= objective,
  /// b . y == objective_value.
  std::vector<Rational> dual;
  /// Infeasibility certificate with the same sign pattern as `dual`,
  /// a^T y >= 0 and b . y < 0.
  std::vector<Rational> farkas;
  std::size_t pivots = 0;
};

/// Two-phase tableau simplex in exact arithmetic with Bland's rule.
Solution solve(const Problem& problem);

bool is_feasible_point(const Problem& problem, const std::vector<Rational>& x);
/// Checks primal feasibility, dual feasibility and equal objective values.
bool verify_optimal(const Problem& problem, const Solution& solution);
bool verify_farkas(const Problem& problem, const std::vector<Rational>& y);

}  // namespace semicech::lp
