#include <doctest.h>

#include <random>

#include "semicech/linalg.hpp"
#include "semicech/lp.hpp"

using namespace semicech;
using linalg::RationalMatrix;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int span) {
  RationalMatrix a(rows, std::vector<Rational>(cols));
  for (auto& row : a)
    for (auto& v : row) v = Rational(static_cast<int>(rng() % (2 * span + 1)) - span);
  return a;
}

std::vector<Rational> times(const RationalMatrix& a, const std::vector<Rational>& x) {
  std::vector<Rational> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  return out;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("rational solve finds consistent solutions and rejects inconsistent systems") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, 3);
    std::vector<Rational> x0(a[0].size());
    for (auto& v : x0) v = Rational(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3));
    const auto b = times(a, x0);
    const auto x = linalg::solve_rational(a, b);
    REQUIRE(x.has_value());
    CHECK(times(a, *x) == b);
  }
  const RationalMatrix a{{1, 1}, {2, 2}};
  CHECK_FALSE(linalg::solve_rational(a, {1, 3}).has_value());
  CHECK(linalg::rank(a) == 1);
}

TEST_CASE("integer solve respects integrality") {
  using linalg::IntegerMatrix;
  const IntegerMatrix a{{2, 0}, {0, 2}};
  CHECK_FALSE(linalg::solve_integer(a, {1, 0}).has_value());
  const auto x = linalg::solve_integer(a, {4, -6});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == -3);
  // 6x + 10y + 15z = 1 has integer solutions (gcd 1).
  const auto y = linalg::solve_integer(IntegerMatrix{{6, 10, 15}}, {1});
  REQUIRE(y.has_value());
  CHECK(6 * (*y)[0] + 10 * (*y)[1] + 15 * (*y)[2] == 1);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    IntegerMatrix m(1 + rng() % 4, std::vector<Integer>(1 + rng() % 5));
    for (auto& row : m)
      for (auto& v : row) v = static_cast<long>(rng() % 9) - 4;
    std::vector<Integer> x0(m[0].size());
    for (auto& v : x0) v = static_cast<long>(rng() % 7) - 3;
    std::vector<Integer> b(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < x0.size(); ++j) b[i] += m[i][j] * x0[j];
    const auto x = linalg::solve_integer(m, b);
    REQUIRE(x.has_value());
    for (std::size_t i = 0; i < m.size(); ++i) {
      Integer lhs = 0;
      for (std::size_t j = 0; j < x->size(); ++j) lhs += m[i][j] * (*x)[j];
      CHECK(lhs == b[i]);
    }
  }
}

}

TEST_SUITE("lp") {

TEST_CASE("small optimum with certified dual") {
  // max x + y, x + 2y <= 4, 3x + y <= 6
  lp::Problem p{{{1, 2}, {3, 1}}, {4, 6}, {lp::Sense::LessEqual, lp::Sense::LessEqual}, {1, 1}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective_value == Rational(14, 5));
  CHECK(lp::verify_optimal(p, s));
}

TEST_CASE("equality and >= rows") {
  // max -x - y, x + y = 3, x >= 1 (as a row), y >= 1/2
  lp::Problem p{{{1, 1}, {1, 0}, {0, 1}},
                {3, 1, Rational(1, 2)},
                {lp::Sense::Equal, lp::Sense::GreaterEqual, lp::Sense::GreaterEqual},
                {-1, -1}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective_value == -3);
  CHECK(lp::verify_optimal(p, s));
}

TEST_CASE("infeasible systems come with a Farkas certificate") {
  lp::Problem p{{{1, 1}, {1, 1}}, {1, 2}, {lp::Sense::Equal, lp::Sense::Equal}, {0, 0}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Infeasible);
  CHECK(lp::verify_farkas(p, s.farkas));
  CHECK_FALSE(lp::verify_farkas(p, std::vector<Rational>{0, 0}));
}

TEST_CASE("unbounded") {
  lp::Problem p{{{1, -1}}, {1}, {lp::Sense::LessEqual}, {0, 1}};
  CHECK(lp::solve(p).status == lp::Status::Unbounded);
}

TEST_CASE("random feasibility problems: either a feasible point or a verified certificate") {
  std::mt19937_64 rng(9);
  int feasible = 0;
  int infeasible = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng() % 4;
    const std::size_t cols = 1 + rng() % 5;
    const auto a = random_matrix(rng, rows, cols, 2);
    std::vector<Rational> b(rows);
    for (auto& v : b) v = Rational(static_cast<int>(rng() % 7) - 3);
    std::vector<lp::Sense> senses(rows);
    for (auto& sense : senses) sense = static_cast<lp::Sense>(rng() % 3);
    std::vector<Rational> objective(cols);
    for (auto& v : objective) v = Rational(-static_cast<int>(rng() % 3));  // bounded for x >= 0
    const lp::Problem p{a, b, senses, objective};
    const auto s = lp::solve(p);
    if (s.status == lp::Status::Optimal) {
      ++feasible;
      CHECK(lp::is_feasible_point(p, s.x));
      CHECK(lp::verify_optimal(p, s));
    } else {
      REQUIRE(s.status == lp::Status::Infeasible);
      ++infeasible;
      CHECK(lp::verify_farkas(p, s.farkas));
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("degenerate problem terminates under Bland's rule") {
  // A classic cycling example (Beale).
  lp::Problem p{{{Rational(1, 4), -60, Rational(-1, 25), 9},
                 {Rational(1, 2), -90, Rational(-1, 50), 3},
                 {0, 0, 1, 0}},
                {0, 0, 1},
                {lp::Sense::LessEqual, lp::Sense::LessEqual, lp::Sense::LessEqual},
                {Rational(3, 4), -150, Rational(1, 50), -6}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective_value == Rational(1, 20));
  CHECK(lp::verify_optimal(p, s));
}

}
