#include "semicech/oracle.hpp"

#include <numeric>

#include "semicech/errors.hpp"
#include "semicech/linalg.hpp"

namespace semicech {

namespace {

__extension__ typedef __int128 Wide;

Integer to_integer(Wide v) {
  __extension__ typedef unsigned __int128 Unsigned;
  const bool negative = v < 0;
  const Unsigned u = negative ? -static_cast<Unsigned>(v) : static_cast<Unsigned>(v);
  Integer out(static_cast<std::uint64_t>(u >> 64));
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return negative ? Integer(-out) : out;
}

enum class Elimination { Ok, Singular, Overflow };

bool mul_sub(Wide a, Wide b, Wide c, Wide d, Wide& out) {
  Wide ab;
  Wide cd;
  if (__builtin_mul_overflow(a, b, &ab) || __builtin_mul_overflow(c, d, &cd)) return false;
  return !__builtin_sub_overflow(ab, cd, &out);
}

// Fraction-free Gauss-Jordan on an n x (n+1) matrix. Afterwards a[i][i] is
// the same nonzero determinant D for every i and a[i][n] = D * x_i.
Elimination gauss_jordan(std::vector<std::vector<Wide>>& a) {
  const std::size_t n = a.size();
  Wide previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return Elimination::Singular;
    std::swap(a[p], a[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Wide factor = a[i][k];
      for (std::size_t j = 0; j <= n; ++j) {
        Wide value;
        if (!mul_sub(a[k][k], a[i][j], factor, a[k][j], value)) return Elimination::Overflow;
        if (value % previous != 0) return Elimination::Overflow;
        a[i][j] = value / previous;
      }
    }
    previous = a[k][k];
  }
  return Elimination::Ok;
}

struct System {
  std::vector<JointEvent> globals;
  std::vector<std::vector<int>> a;  // 0/1
  std::vector<Rational> b;
};

// Rows: every (context, event), then the pin, then total mass.
System build_system(const EmpiricalModel& m, int j0, const JointEvent& event, std::uint64_t cutoff) {
  const Scenario& s = m.scenario();
  System sys;
  sys.globals = global_sections(s, cutoff);
  for (int k = 0; k < s.context_count(); ++k) {
    for (const auto& e : s.events(s.context(k))) {
      std::vector<int> row;
      for (const auto& g : sys.globals) row.push_back(restrict_event(g, s.context(k)) == e ? 1 : 0);
      sys.a.push_back(std::move(row));
      sys.b.push_back(m.weight(k, s.rank(e)));
    }
  }
  std::vector<int> pin;
  for (const auto& g : sys.globals) pin.push_back(restrict_event(g, event.domain) == event ? 1 : 0);
  sys.a.push_back(std::move(pin));
  sys.b.push_back(m.weight(j0, s.rank(event)));
  sys.a.emplace_back(sys.globals.size(), 1);
  sys.b.emplace_back(1);
  return sys;
}

bool satisfies(const System& sys, const std::vector<Rational>& x) {
  for (std::size_t i = 0; i < sys.a.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sys.a[i][j]) lhs += x[j];
    }
    if (lhs != sys.b[i]) return false;
  }
  return true;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleVerdict boolean_oracle(const EmpiricalModel& m, int j0, const JointEvent& event, std::uint64_t cutoff) {
  const Scenario& s = m.scenario();
  OracleVerdict out;
  for (const auto& g : global_sections(s, cutoff)) {
    ++out.examined;
    if (restrict_event(g, s.context(j0)) != event) continue;
    bool inside = true;
    for (int k = 0; k < s.context_count() && inside; ++k) {
      inside = m.supported(k, s.rank(restrict_event(g, s.context(k))));
    }
    if (inside) {
      out.extendable = true;
      out.global = g;
      return out;
    }
  }
  return out;
}

OracleVerdict basis_oracle(const EmpiricalModel& m, int j0, const JointEvent& event, bool signed_weights,
                           std::uint64_t cutoff) {
  const System sys = build_system(m, j0, event, cutoff);
  OracleVerdict out;

  // With b >= 0 and nonnegative rows, a zero right-hand side forces every
  // global section in that row to weight zero.
  std::vector<std::size_t> columns;
  for (std::size_t j = 0; j < sys.globals.size(); ++j) {
    bool allowed = true;
    for (std::size_t i = 0; i < sys.a.size() && allowed && !signed_weights; ++i) {
      allowed = !(sys.a[i][j] && sys.b[i] == 0);
    }
    if (allowed) columns.push_back(j);
  }
  if (columns.empty()) return out;

  linalg::RationalMatrix transposed(columns.size(), std::vector<Rational>(sys.a.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t i = 0; i < sys.a.size(); ++i) transposed[c][i] = sys.a[i][columns[c]];
  }
  const std::vector<std::size_t> rows = linalg::row_reduce(transposed);
  const std::size_t r = rows.size();

  Integer scale = 1;
  for (std::size_t i : rows) scale = lcm(scale, Integer(denominator(sys.b[i])));
  std::vector<Integer> scaled;
  bool wide_ok = scale < (Integer(1) << 40);
  for (std::size_t i : rows) {
    scaled.push_back(numerator(sys.b[i] * Rational(scale)));
    wide_ok = wide_ok && abs(scaled.back()) < (Integer(1) << 40);
  }

  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  do {
    if (++out.examined > cutoff) throw TooLarge("more than " + std::to_string(cutoff) + " column bases");
    std::vector<Rational> basic(r);
    bool solved = false;
    if (wide_ok) {
      std::vector<std::vector<Wide>> a(r, std::vector<Wide>(r + 1));
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = sys.a[rows[i]][columns[pick[j]]];
        a[i][r] = static_cast<Wide>(scaled[i].convert_to<long long>());
      }
      const Elimination e = gauss_jordan(a);
      if (e == Elimination::Singular) continue;
      if (e == Elimination::Ok) {
        bool nonnegative = true;
        for (std::size_t i = 0; i < r && nonnegative; ++i) {
          nonnegative = signed_weights || (a[i][r] == 0) || ((a[i][r] > 0) == (a[i][i] > 0));
        }
        if (!nonnegative) continue;
        for (std::size_t i = 0; i < r; ++i) {
          basic[i] = Rational(to_integer(a[i][r]), to_integer(a[i][i])) / Rational(scale);
        }
        solved = true;
      }
    }
    if (!solved) {
      linalg::RationalMatrix a(r, std::vector<Rational>(r));
      std::vector<Rational> b(r);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = sys.a[rows[i]][columns[pick[j]]];
        b[i] = sys.b[rows[i]];
      }
      if (linalg::rank(a) < r) continue;
      basic = *linalg::solve_rational(a, b);
      bool nonnegative = true;
      for (const auto& v : basic) nonnegative = nonnegative && (signed_weights || v >= 0);
      if (!nonnegative) continue;
    }
    std::vector<Rational> x(sys.globals.size(), Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[columns[pick[i]]] = basic[i];
    if (!satisfies(sys, x)) continue;
    out.extendable = true;
    out.weights = std::move(x);
    return out;
  } while (next_combination(pick, columns.size()));
  return out;
}

OracleVerdict extendability_oracle(const EmpiricalModel& m, int j0, const JointEvent& event, std::uint64_t cutoff) {
  const SemiringSpec& r = m.semiring();
  if (r.is_zero(m.weight(j0, m.scenario().rank(event)))) {
    OracleVerdict out;
    out.extendable = true;
    return out;
  }
  if (r.is_boolean()) return boolean_oracle(m, j0, event, cutoff);
  if (!r.has_division()) throw NotSemifield("no extendability oracle over '" + r.name() + "'");
  return basis_oracle(m, j0, event, r.has_negation(), cutoff);
}

}  // namespace semicech
