// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
// below. Exit status is 0 only when every FAIL is a pinned, documented
// unattainable criterion whose disproof also checks out here.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semicech/analysis.hpp"
#include "semicech/cochain.hpp"
#include "semicech/obstruction.hpp"
#include "semicech/oracle.hpp"
#include "semicech/random_models.hpp"
#include "support.hpp"

using namespace semicech;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double kTable1Seconds = 1.0;
constexpr double kOracleSweepSeconds = 120.0;
constexpr std::size_t kRandomModels = 240;  // >= 200
constexpr std::uint64_t kRandomSeed = 20240601;
constexpr std::size_t kCochainTrials = 1000;  // per semiring, per law
constexpr std::size_t kSignedModels = 120;    // >= 100

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Line {
  std::string id;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(const std::string& id, bool pass, const std::string& detail) {
  lines.push_back({id, pass, detail});
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
}

bool is_q_plus(const EmpiricalModel& m) { return m.semiring().kind() == SemiringKind::NonnegRational; }

std::vector<EmpiricalModel> random_population() {
  std::mt19937_64 rng(kRandomSeed);
  const Scenario cycle = cycle_scenario(4);
  const Scenario triangle = cycle_scenario(3);
  std::vector<EmpiricalModel> out;
  for (std::size_t i = 0; i < kRandomModels; ++i) {
    const Scenario& s = i % 2 == 0 ? cycle : triangle;
    out.push_back(random_model(s, (i / 2) % 2 == 0 ? make_boolean() : make_nonneg_rational(), rng));
  }
  return out;
}

std::vector<EmpiricalModel> corpus_models() {
  std::vector<EmpiricalModel> out;
  for (const auto& stem : testing::corpus_stems()) {
    auto m = testing::corpus_model(stem);
    if (is_nondisturbing(m)) out.push_back(std::move(m));
  }
  return out;
}

// M b = p and sum b = 1 in plain rational arithmetic, independent of the
// solver's own exactness flag.
bool signed_residual_zero(const EmpiricalModel& m, const GlobalWeights& b) {
  const IncidenceMatrix inc = incidence_matrix(m.scenario());
  const std::vector<Element> p = model_vector(m);
  if (b.size() != inc.columns.size()) return false;
  Rational total = 0;
  for (const auto& w : b) total += w;
  if (total != 1) return false;
  for (std::size_t r = 0; r < inc.rows.size(); ++r) {
    Rational sum = 0;
    for (std::size_t c = 0; c < b.size(); ++c)
      if (inc.entries[r][c]) sum += b[c];
    if (sum != p[r]) return false;
  }
  return true;
}

template <class F>
void for_each_supported(const EmpiricalModel& m, F&& f) {
  const auto& s = m.scenario();
  for (int k = 0; k < s.context_count(); ++k) {
    for (std::uint64_t r = 0; r < s.event_count(s.context(k)); ++r) {
      if (m.supported(k, r)) f(k, s.unrank(s.context(k), r));
    }
  }
}

void criterion1() {
  const auto m = testing::corpus_model("table1");
  const auto start = Clock::now();
  const auto rows = obstruction_sweep(m);
  const double elapsed = seconds_since(start);
  const auto& s = m.scenario();
  int classical_trivial = 0;
  std::set<std::string> nontrivial;
  for (const auto& row : rows) {
    classical_trivial += row.classical->trivial();
    if (!row.generalized->trivial()) nontrivial.insert(s.section_label(s.unrank(s.context(row.context), row.event)));
  }
  const std::set<std::string> expected{"(ad)->(01)", "(ad)->(10)"};
  const bool pass = testing::same_tables(m, table1_model()) && rows.size() == 16 && classical_trivial == 16 &&
                    nontrivial == expected && elapsed < kTable1Seconds;
  std::string names;
  for (const auto& n : nontrivial) names += (names.empty() ? "" : " ") + n;
  report("C1", pass,
         "table1: " + std::to_string(rows.size()) + " sections, classical Z trivial on " +
             std::to_string(classical_trivial) + ", generalized B nontrivial on {" + names + "}, " +
             std::to_string(elapsed) + " s (limit 1 s)");
}

void criterion2(const std::vector<EmpiricalModel>& population) {
  const auto start = Clock::now();
  std::size_t sections = 0;
  std::size_t mismatches = 0;
  for (const auto& m : population) {
    for_each_supported(m, [&](int k, const JointEvent& x) {
      ++sections;
      if (generalized_obstruction(m, k, x).trivial() != extendability_oracle(m, k, x).extendable) ++mismatches;
    });
  }
  const double elapsed = seconds_since(start);
  report("C2", mismatches == 0 && population.size() >= 200 && elapsed < kOracleSweepSeconds,
         std::to_string(population.size()) + " random models (4-cycle/triangle, B/Q+, seed " +
             std::to_string(kRandomSeed) + "), " + std::to_string(sections) + " supported sections, " +
             std::to_string(mismatches) + " mismatches, " + std::to_string(elapsed) + " s (limit 120 s)");
}

void criterion3(const std::vector<EmpiricalModel>& corpus, const std::vector<EmpiricalModel>& population) {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::size_t contextual = 0;
  auto check = [&](const EmpiricalModel& m) {
    ++checked;
    const auto verdict = is_r_contextual(m);
    const bool c = verdict.contextual();
    contextual += c;
    const auto decomposition = noncontextual_decompose(m);
    bool ok = c == !decomposition.has_value();
    if (decomposition) ok = ok && realizes(m, *decomposition);
    if (!c) ok = ok && verdict.distribution && realizes(m, *verdict.distribution);
    if (is_q_plus(m)) {
      const auto cf = contextual_fraction(m);
      ok = ok && cf.certified && (cf.value > 0) == c;
    }
    mismatches += !ok;
  };
  for (const auto& m : corpus) check(m);
  for (const auto& m : population) check(m);
  report("C3", mismatches == 0,
         std::to_string(checked) + " models (" + std::to_string(corpus.size()) + " corpus), " +
             std::to_string(contextual) + " contextual, " + std::to_string(mismatches) +
             " mismatches among verdict / decomposition / CF>0 (CF leg on Q+ models)");
}

void criterion4() {
  std::mt19937_64 rng(kRandomSeed + 4);
  const Scenario star = Scenario::build_uniform({"a", "b", "c", "d", "e"},
                                                {{"a", "b", "c"}, {"a", "c", "d"}, {"a", "d", "e"}, {"a", "b", "e"}}, {"0", "1"});
  const std::vector<Nerve> nerves{Nerve(star, 3), Nerve(cycle_scenario(4), 3), Nerve(cycle_scenario(3), 3)};

  std::size_t dd_trials = 0;
  std::size_t dd_failures = 0;
  for (const auto& ring : {make_rational(), make_integer()}) {
    for (std::size_t t = 0; t < kCochainTrials; ++t) {
      const Nerve& n = nerves[t % nerves.size()];
      const int q = static_cast<int>(t / nerves.size()) % 2;
      ++dd_trials;
      dd_failures += !dd_vanishes(n, ring, random_cochain(n, ring, q, rng));
    }
  }
  std::size_t four_trials = 0;
  std::size_t four_failures = 0;
  for (const auto& r : {make_boolean(), make_nonneg_rational(), make_rational(), make_integer()}) {
    for (std::size_t t = 0; t < kCochainTrials; ++t) {
      const Nerve& n = nerves[t % nerves.size()];
      const int q = static_cast<int>(t / nerves.size()) % 2;
      ++four_trials;
      four_failures += !four_term_holds(n, r, random_cochain(n, r, q, rng));
    }
  }
  std::size_t scenarios = 0;
  std::size_t bijection_failures = 0;
  for (const auto& s : {cycle_scenario(3), cycle_scenario(4), star}) {
    ++scenarios;
    const Nerve n(s);
    const auto families = enumerate_basis_families(n, EventPresheaf::full(s), make_integer());
    std::set<std::uint64_t> glued;
    bool ok = families.size() == global_sections(s).size();
    for (const auto& f : families) {
      const auto g = glue_family(n, f);
      ok = ok && g && in_zeroth_cohomology(n, make_integer(), f);
      if (g) glued.insert(s.rank(*g));
    }
    ok = ok && glued.size() == families.size();
    bijection_failures += !ok;
  }
  report("C4", dd_failures == 0 && four_failures == 0 && bijection_failures == 0,
         "d d = 0 on " + std::to_string(dd_trials) + " cochains over Q,Z (" + std::to_string(dd_failures) +
             " failures); four-term on " + std::to_string(four_trials) + " cochains over B,Q+,Q,Z (" +
             std::to_string(four_failures) + " failures); H0 bijection on " + std::to_string(scenarios) +
             " scenarios (" + std::to_string(bijection_failures) + " failures)");
}

void criterion5() {
  std::mt19937_64 rng(kRandomSeed + 5);
  std::size_t exact = 0;
  for (std::size_t i = 0; i < kSignedModels; ++i) {
    const auto m = random_model(cycle_scenario(i % 2 == 0 ? 4 : 3), make_nonneg_rational(), rng);
    const auto signed_b = signed_realization(m);
    exact += signed_b.exact && signed_residual_zero(m, signed_b.weights);
  }
  const auto pr = signed_realization(pr_box(make_nonneg_rational()));
  bool negative = false;
  for (const auto& w : pr.weights) negative = negative || w < 0;
  const bool pr_exact = pr.exact && signed_residual_zero(pr_box(make_nonneg_rational()), pr.weights);
  report("C5", exact == kSignedModels && pr_exact && negative,
         std::to_string(exact) + "/" + std::to_string(kSignedModels) +
             " random Q+ models with exact signed realization; PR box exact=" + (pr_exact ? "yes" : "no") +
             ", negative weights=" + (negative ? "yes" : "no"));
}

// Returns whether the documented disproof of the unattainable anchor holds.
bool criterion6() {
  const auto q = make_nonneg_rational();
  struct Anchor {
    std::string name;
    EmpiricalModel model;
    Rational expected;
  };
  const std::vector<Anchor> anchors{
      {"deterministic", testing::corpus_model("deterministic"), 0},
      {"PR box", testing::corpus_model("prbox"), 1},
      {"1/2 PR + 1/2 fully-mixed", testing::corpus_model("pr_fully_mixed"), Rational(1, 2)},
  };
  bool pass = true;
  std::string detail;
  std::vector<FractionResult> results;
  for (const auto& a : anchors) {
    const auto cf = contextual_fraction(a.model);
    const bool ok = cf.certified && cf.value == a.expected;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + a.name + " CF=" + format_rational(cf.value) + " (want " +
              format_rational(a.expected) + ", dual " + (cf.certified ? "verified" : "NOT verified") + ")";
    results.push_back(cf);
  }
  // The mixture with noise has CHSH value exactly 2; an explicit
  // hidden-variable decomposition shows CF = 0.
  const auto& noisy = anchors[2].model;
  const auto decomposition = noncontextual_decompose(noisy);
  const bool disproof = results[0].certified && results[0].value == 0 && results[1].certified &&
                        results[1].value == 1 && results[2].certified && results[2].value == 0 && decomposition &&
                        realizes(noisy, *decomposition);
  const auto det_mix = contextual_fraction(testing::corpus_model("pr_deterministic"));
  detail += "; noisy mixture decomposition " + std::string(decomposition && realizes(noisy, *decomposition)
                                                                ? "realizes the model"
                                                                : "missing");
  detail += "; for reference 1/2 PR + 1/2 deterministic CF=" + format_rational(det_mix.value) +
            (det_mix.certified ? " (dual verified)" : " (dual NOT verified)");
  report("C6", pass, detail);
  return disproof;
}

void criterion7(const std::vector<EmpiricalModel>& corpus, const std::vector<EmpiricalModel>& population) {
  std::size_t models = 0;
  std::size_t sections = 0;
  std::size_t failures = 0;
  auto check = [&](const EmpiricalModel& m) {
    if (!is_q_plus(m)) return;
    ++models;
    for_each_supported(m, [&](int k, const JointEvent& x) {
      ++sections;
      failures += !cancellative_bridge_check(m, k, x);
    });
  };
  for (const auto& m : corpus) check(m);
  for (const auto& m : population) check(m);
  report("C7", failures == 0 && sections > 0,
         std::to_string(sections) + " supported sections over " + std::to_string(models) +
             " Q+ models (corpus + random), " + std::to_string(failures) + " failures");
}

}  // namespace

int main() {
  const auto corpus = corpus_models();
  const auto population = random_population();

  criterion1();
  criterion2(population);
  criterion3(corpus, population);
  criterion4();
  criterion5();
  const bool c6_disproof = criterion6();
  criterion7(corpus, population);

  // C6's third anchor cannot hold (see the C6 line); it is the only
  // failure tolerated, and only while its disproof verifies.
  const std::set<std::string> known_unattainable{"C6"};
  int unexpected = 0;
  for (const auto& line : lines) {
    const bool known = known_unattainable.count(line.id) > 0;
    if (!line.pass && !(known && c6_disproof)) ++unexpected;
    if (line.pass && known) ++unexpected;  // the pinned list is out of date
  }
  std::printf("summary: %zu criteria, %d unexpected result(s); known unattainable: C6 (1/2 PR + 1/2 fully-mixed "
              "is noncontextual)\n",
              lines.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
