#include "semicech/lp.hpp"

#include <optional>
#include <stdexcept>

namespace semicech::lp {

namespace {

enum class ColumnKind { Structural, Slack, Artificial };

class Tableau {
 public:
  Tableau(const Problem& p) : rows_(p.b.size()), structural_(p.objective.size()) {
    if (p.a.size() != rows_ || p.senses.size() != rows_) throw std::invalid_argument("lp: shape mismatch");
    for (const auto& row : p.a) {
      if (row.size() != structural_) throw std::invalid_argument("lp: ragged constraint matrix");
    }
    // Rows are flipped so that every right-hand side is non-negative.
    flip_.assign(rows_, 1);
    std::vector<Sense> senses = p.senses;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (p.b[i] < 0) {
        flip_[i] = -1;
        if (senses[i] == Sense::LessEqual) senses[i] = Sense::GreaterEqual;
        else if (senses[i] == Sense::GreaterEqual) senses[i] = Sense::LessEqual;
      }
    }
    kinds_.assign(structural_, ColumnKind::Structural);
    std::vector<std::pair<std::size_t, Rational>> extra;  // (row, coefficient)
    for (std::size_t i = 0; i < rows_; ++i) {
      if (senses[i] == Sense::LessEqual) {
        extra.emplace_back(i, Rational(1));
        kinds_.push_back(ColumnKind::Slack);
      } else if (senses[i] == Sense::GreaterEqual) {
        extra.emplace_back(i, Rational(-1));
        kinds_.push_back(ColumnKind::Slack);
      }
    }
    const std::size_t first_artificial = kinds_.size();
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (senses[i] != Sense::LessEqual) needs_artificial.push_back(i);
    }
    kinds_.insert(kinds_.end(), needs_artificial.size(), ColumnKind::Artificial);
    cols_ = kinds_.size();

    t_.assign(rows_, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(rows_, 0);
    unit_column_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational sign(flip_[i]);
      for (std::size_t j = 0; j < structural_; ++j) {
        if (p.a[i][j] != 0) t_[i][j] = sign * p.a[i][j];
      }
      t_[i][cols_] = sign * p.b[i];
    }
    for (std::size_t k = 0; k < extra.size(); ++k) {
      const auto& [row, coefficient] = extra[k];
      t_[row][structural_ + k] = coefficient;
      if (coefficient == 1) {
        basis_[row] = structural_ + k;
        unit_column_[row] = structural_ + k;
      }
    }
    for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
      const std::size_t row = needs_artificial[k];
      t_[row][first_artificial + k] = 1;
      basis_[row] = first_artificial + k;
      unit_column_[row] = first_artificial + k;
    }
  }

  // Maximizes cost . x over the current tableau; returns false when
  // unbounded.
  bool optimize(const std::vector<Rational>& cost, bool allow_artificial) {
    cost_ = cost;
    reduced_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j <= cols_; ++j) {
      Rational z = 0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (cost_[basis_[i]] != 0 && t_[i][j] != 0) z += cost_[basis_[i]] * t_[i][j];
      }
      reduced_[j] = j < cols_ ? z - cost_[j] : z;
    }
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificial && kinds_[j] == ColumnKind::Artificial) continue;
        if (reduced_[j] < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      const std::size_t e = *entering;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][e] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][e];
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, e);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    ++pivots_;
    const Rational lead = t_[r][e];
    for (auto& v : t_[r]) {
      if (v != 0) v /= lead;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || t_[i][e] == 0) continue;
      const Rational factor = t_[i][e];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (t_[r][j] != 0) t_[i][j] -= factor * t_[r][j];
      }
    }
    if (!reduced_.empty() && reduced_[e] != 0) {
      const Rational factor = reduced_[e];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (t_[r][j] != 0) reduced_[j] -= factor * t_[r][j];
      }
    }
    basis_[r] = e;
  }

  // Moves basic artificial variables (necessarily at zero) out of the basis
  // where some other column can replace them.
  void expel_artificials() {
    reduced_.clear();
    for (std::size_t i = 0; i < rows_; ++i) {
      if (kinds_[basis_[i]] != ColumnKind::Artificial) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (kinds_[j] != ColumnKind::Artificial && t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // y_i = c_B B^{-1} e_i, mapped back through the row flips.
  std::vector<Rational> duals() const {
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::size_t col = unit_column_[i];
      y[i] = (reduced_[col] + cost_[col]) * Rational(flip_[i]);
    }
    return y;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(structural_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = t_[i][cols_];
    }
    return x;
  }

  Rational objective() const { return reduced_[cols_]; }
  std::size_t columns() const { return cols_; }
  ColumnKind kind(std::size_t j) const { return kinds_[j]; }
  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_ = 0;
  std::vector<int> flip_;
  std::vector<ColumnKind> kinds_;
  linalg::RationalMatrix t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_column_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const Problem& problem) {
  Tableau tableau(problem);
  Solution out;

  std::vector<Rational> phase_one(tableau.columns(), Rational(0));
  bool any_artificial = false;
  for (std::size_t j = 0; j < tableau.columns(); ++j) {
    if (tableau.kind(j) == ColumnKind::Artificial) {
      phase_one[j] = -1;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    tableau.optimize(phase_one, true);
    if (tableau.objective() < 0) {
      out.status = Status::Infeasible;
      out.farkas = tableau.duals();
      out.pivots = tableau.pivots();
      return out;
    }
    tableau.expel_artificials();
  }

  std::vector<Rational> phase_two(tableau.columns(), Rational(0));
  for (std::size_t j = 0; j < problem.objective.size(); ++j) phase_two[j] = problem.objective[j];
  if (!tableau.optimize(phase_two, false)) {
    out.status = Status::Unbounded;
    out.x = tableau.primal();
    out.pivots = tableau.pivots();
    return out;
  }
  out.status = Status::Optimal;
  out.x = tableau.primal();
  out.objective_value = tableau.objective();
  out.dual = tableau.duals();
  out.pivots = tableau.pivots();
  return out;
}

bool is_feasible_point(const Problem& p, const std::vector<Rational>& x) {
  if (x.size() != p.objective.size()) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (std::size_t i = 0; i < p.b.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (p.a[i][j] != 0 && x[j] != 0) lhs += p.a[i][j] * x[j];
    }
    switch (p.senses[i]) {
      case Sense::LessEqual: if (lhs > p.b[i]) return false; break;
      case Sense::Equal: if (lhs != p.b[i]) return false; break;
      case Sense::GreaterEqual: if (lhs < p.b[i]) return false; break;
    }
  }
  return true;
}

namespace {

bool dual_signs_ok(const Problem& p, const std::vector<Rational>& y) {
  if (y.size() != p.b.size()) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (p.senses[i] == Sense::LessEqual && y[i] < 0) return false;
    if (p.senses[i] == Sense::GreaterEqual && y[i] > 0) return false;
  }
  return true;
}

Rational column_dot(const Problem& p, const std::vector<Rational>& y, std::size_t j) {
  Rational acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (p.a[i][j] != 0 && y[i] != 0) acc += p.a[i][j] * y[i];
  }
  return acc;
}

Rational rhs_dot(const Problem& p, const std::vector<Rational>& y) {
  Rational acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += p.b[i] * y[i];
  return acc;
}

}  // namespace

bool verify_optimal(const Problem& p, const Solution& s) {
  if (s.status != Status::Optimal || !is_feasible_point(p, s.x) || !dual_signs_ok(p, s.dual)) return false;
  Rational primal = 0;
  for (std::size_t j = 0; j < p.objective.size(); ++j) {
    primal += p.objective[j] * s.x[j];
    if (column_dot(p, s.dual, j) < p.objective[j]) return false;
  }
  return primal == s.objective_value && rhs_dot(p, s.dual) == primal;
}

bool verify_farkas(const Problem& p, const std::vector<Rational>& y) {
  if (!dual_signs_ok(p, y)) return false;
  for (std::size_t j = 0; j < p.objective.size(); ++j) {
    if (column_dot(p, y, j) < 0) return false;
  }
  return rhs_dot(p, y) < 0;
}

}  // namespace semicech::lp
