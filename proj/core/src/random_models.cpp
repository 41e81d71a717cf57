#include "semicech/random_models.hpp"

#include <algorithm>
#include <string>

#include "semicech/errors.hpp"

namespace semicech {

namespace {

using Table = std::vector<Element>;

const Table kCorrelated{Rational(1, 2), 0, 0, Rational(1, 2)};
const Table kAnticorrelated{0, Rational(1, 2), Rational(1, 2), 0};

Table over(const SemiringSpec& r, const Table& rational) {
  if (!r.is_boolean()) return rational;
  Table out;
  for (const auto& v : rational) out.push_back(v == 0 ? r.zero() : r.one());
  return out;
}

// Uniform index in [0, n) straight from the engine, which is fully
// specified, so models are identical on every platform.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

Scenario cycle_scenario(int n) {
  if (n < 3 || n > 26) throw ScenarioError("cycle length must be between 3 and 26");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  std::vector<std::vector<std::string>> contexts;
  for (int i = 0; i < n; ++i) contexts.push_back({names[i], names[(i + 1) % n]});
  return Scenario::build_uniform(names, contexts, {"0", "1"});
}

EmpiricalModel table1_model() {
  // Contexts in canonical order: ab, ad, bc, cd.
  const SemiringSpec b = make_boolean();
  return make_model_dense(cycle_scenario(4), b, {{1, 0, 0, 1}, {1, 1, 1, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}});
}

EmpiricalModel pr_box(const SemiringSpec& r) {
  return make_model_dense(cycle_scenario(4), r,
                          {over(r, kCorrelated), over(r, kAnticorrelated), over(r, kCorrelated), over(r, kCorrelated)});
}

EmpiricalModel hardy_model() {
  return make_model_dense(cycle_scenario(4), make_boolean(), {{1, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}});
}

EmpiricalModel deterministic_model(const SemiringSpec& r, int n) {
  const Scenario s = cycle_scenario(n);
  std::vector<Table> tables(s.context_count(), Table{r.one(), r.zero(), r.zero(), r.zero()});
  return make_model_dense(s, r, tables);
}

EmpiricalModel fully_mixed_model(int n) {
  const Scenario s = cycle_scenario(n);
  std::vector<Table> tables(s.context_count(), Table(4, Rational(1, 4)));
  return make_model_dense(s, make_nonneg_rational(), tables);
}

EmpiricalModel triangle_anticorrelated(const SemiringSpec& r) {
  const Scenario s = cycle_scenario(3);
  std::vector<Table> tables(s.context_count(), over(r, kAnticorrelated));
  return make_model_dense(s, r, tables);
}

EmpiricalModel mixture(const EmpiricalModel& a, const EmpiricalModel& b, const Rational& lambda) {
  if (!(a.scenario() == b.scenario())) throw ScenarioError("mixture of models on different scenarios");
  const SemiringSpec r = a.semiring().is_boolean() ? make_nonneg_rational() : a.semiring();
  std::vector<Table> tables;
  for (int k = 0; k < a.scenario().context_count(); ++k) {
    Table t;
    for (std::size_t i = 0; i < a.table(k).size(); ++i) {
      t.push_back(lambda * a.table(k)[i] + (Rational(1) - lambda) * b.table(k)[i]);
    }
    tables.push_back(std::move(t));
  }
  return make_model_dense(a.scenario(), r, tables);
}

EmpiricalModel disturbing_example() {
  const Scenario s = Scenario::build_uniform({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {"0", "1"});
  return make_model_dense(s, make_nonneg_rational(), {{1, 0, 0, 0}, {0, 0, 1, 0}});
}

EmpiricalModel random_model(const Scenario& s, const SemiringSpec& r, std::mt19937_64& rng) {
  for (int m = 0; m < s.measurement_count(); ++m) {
    if (s.outcome_count(m) != 2) throw ScenarioError("random models need binary outcomes");
  }
  for (const auto& ctx : s.contexts()) {
    if (ctx.size() != 2) throw ScenarioError("random models need contexts of two measurements");
  }
  constexpr std::uint64_t kWeight = 6;
  const int n = s.context_count();

  // Raw tables and their P(x = 0) marginals.
  std::vector<Table> raw(n);
  std::vector<Rational> marginal_sum(s.measurement_count(), Rational(0));
  std::vector<int> uses(s.measurement_count(), 0);
  for (int k = 0; k < n; ++k) {
    Table t(4);
    Rational total = 0;
    for (auto& v : t) {
      v = draw(rng, 3) == 0 ? 0 : static_cast<long long>(draw(rng, kWeight + 1));
      total += v;
    }
    if (total == 0) {
      t.assign(4, Rational(1));
      total = 4;
    }
    for (auto& v : t) v /= total;
    raw[k] = t;
    const auto members = s.context(k).members();
    marginal_sum[members[0]] += t[0] + t[1];
    marginal_sum[members[1]] += t[0] + t[2];
    ++uses[members[0]];
    ++uses[members[1]];
  }
  std::vector<Rational> alpha(s.measurement_count());
  for (int m = 0; m < s.measurement_count(); ++m) {
    alpha[m] = uses[m] ? marginal_sum[m] / uses[m] : Rational(1, 2);
    if (draw(rng, 2) == 0) alpha[m] = Rational(1, 2);
  }

  std::vector<Table> tables(n);
  for (int k = 0; k < n; ++k) {
    const auto members = s.context(k).members();
    const Rational& a = alpha[members[0]];
    const Rational& b = alpha[members[1]];
    const Rational low = std::max(Rational(0), Rational(a + b - 1));
    const Rational high = std::min(a, b);
    Rational t = std::clamp(raw[k][0], low, high);
    switch (draw(rng, 3)) {
      case 0: t = low; break;
      case 1: t = high; break;
      default: break;
    }
    tables[k] = Table{t, a - t, b - t, Rational(1) - a - b + t};
  }
  return make_model_dense(s, r, r.is_boolean() ? [&] {
    std::vector<Table> support;
    for (const auto& t : tables) support.push_back(over(r, t));
    return support;
  }() : tables);
}

}  // namespace semicech
