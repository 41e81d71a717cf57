#include "semicech/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace semicech::linalg {

std::vector<std::size_t> row_reduce(RationalMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational lead = a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational factor = a[i][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (a[r][k] != 0) a[i][k] -= factor * a[r][k];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RationalMatrix a) { return row_reduce(a).size(); }

std::optional<std::vector<Rational>> solve_rational(const RationalMatrix& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_rational: shape mismatch");
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

namespace {

// g = s*a + t*b with g = gcd(a, b) >= 0.
void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, s_ = 0, old_t = 0, t_ = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s_; old_s = s_; s_ = tmp;
    tmp = old_t - q * t_; old_t = t_; t_ = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r; old_s = -old_s; old_t = -old_t;
  }
  g = old_r; s = old_s; t = old_t;
}

}  // namespace

std::optional<std::vector<Integer>> solve_integer(const IntegerMatrix& a, const std::vector<Integer>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_integer: shape mismatch");
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  IntegerMatrix h = a;
  IntegerMatrix u(cols, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  auto combine = [&](IntegerMatrix& m, std::size_t p, std::size_t j, const Integer& s, const Integer& t,
                     const Integer& x, const Integer& y) {
    // col_p <- s col_p + t col_j ; col_j <- x col_p + y col_j
    for (auto& row : m) {
      Integer cp = row[p], cj = row[j];
      row[p] = s * cp + t * cj;
      row[j] = x * cp + y * cj;
    }
  };

  // pivot_col[i] = column of row i's pivot, or cols for non-pivot rows.
  std::vector<std::size_t> pivot_col(rows, cols);
  std::size_t p = 0;
  for (std::size_t i = 0; i < rows && p < cols; ++i) {
    for (std::size_t j = p + 1; j < cols; ++j) {
      if (h[i][j] == 0) continue;
      Integer g, s, t;
      extended_gcd(h[i][p], h[i][j], g, s, t);
      const Integer x = -h[i][j] / g;
      const Integer y = h[i][p] / g;
      combine(h, p, j, s, t, x, y);
      combine(u, p, j, s, t, x, y);
    }
    if (h[i][p] == 0) continue;
    if (h[i][p] < 0) {
      for (auto& row : h) row[p] = -row[p];
      for (auto& row : u) row[p] = -row[p];
    }
    pivot_col[i] = p++;
  }

  std::vector<Integer> y(cols, 0);
  std::size_t established = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    Integer acc = 0;
    for (std::size_t l = 0; l < established; ++l) acc += h[i][l] * y[l];
    const Integer residual = b[i] - acc;
    if (pivot_col[i] < cols) {
      const std::size_t k = pivot_col[i];
      if (residual % h[i][k] != 0) return std::nullopt;
      y[k] = residual / h[i][k];
      established = k + 1;
    } else if (residual != 0) {
      return std::nullopt;
    }
  }

  std::vector<Integer> x(cols, 0);
  for (std::size_t r = 0; r < cols; ++r) {
    for (std::size_t c = 0; c < cols; ++c) x[r] += u[r][c] * y[c];
  }
  return x;
}

std::vector<Rational> solve_transposed(const RationalMatrix& b, const std::vector<Rational>& c) {
  const std::size_t n = b.size();
  RationalMatrix bt(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) bt[i][j] = b[j][i];
  }
  auto y = solve_rational(bt, c);
  if (!y) throw std::runtime_error("solve_transposed: singular basis");
  return *y;
}

}  // namespace semicech::linalg
