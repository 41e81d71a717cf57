#pragma once

#include <random>

#include "semicech/model.hpp"

namespace semicech {

/// Measurements a, b, c, ... with binary outcomes {0, 1} and the n
/// contexts {x_i, x_{i+1 mod n}}. n >= 3.
Scenario cycle_scenario(int n);

/// The Boolean model with ab, bc, cd perfectly correlated and da full.
EmpiricalModel table1_model();

/// 4-cycle PR box: ab, bc, cd correlated, ad anticorrelated, 1/2 per
/// supported entry (1 over the Boolean semiring).
EmpiricalModel pr_box(const SemiringSpec& r);

/// Hardy's table on the 4-cycle (a, b, c, d) = (a, b, a', b'):
/// ab full, ad and bc exclude 00, cd excludes 11. Boolean.
EmpiricalModel hardy_model();

/// Point mass on the all-zero global section of an n-cycle.
EmpiricalModel deterministic_model(const SemiringSpec& r, int n = 4);

/// Uniform 1/4 tables on an n-cycle (nonnegative rationals).
EmpiricalModel fully_mixed_model(int n = 4);

/// Triangle with every context perfectly anticorrelated.
EmpiricalModel triangle_anticorrelated(const SemiringSpec& r);

/// lambda * a + (1 - lambda) * b, tablewise; same scenario, rational
/// coefficients.
EmpiricalModel mixture(const EmpiricalModel& a, const EmpiricalModel& b, const Rational& lambda);

/// Two contexts sharing b whose b-marginals differ.
EmpiricalModel disturbing_example();

/// Seeded random non-disturbing model on a scenario whose contexts are
/// pairs of binary measurements. Raw tables are drawn with small integer
/// weights, single-measurement marginals are averaged over the contexts
/// that share them (and sometimes snapped to 1/2), and each table is
/// rebuilt from its two marginals with its 00 entry clamped to the feasible
/// interval and often pushed to an endpoint. Boolean models are the
/// support of the rational model. Throws ScenarioError for other
/// scenarios.
EmpiricalModel random_model(const Scenario& s, const SemiringSpec& r, std::mt19937_64& rng);

}  // namespace semicech
