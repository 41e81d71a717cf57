#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "semicech/free_vector.hpp"
#include "semicech/scenario.hpp"
#include "semicech/semiring.hpp"

namespace semicech {

inline constexpr std::uint64_t kDefaultEnumerationCutoff = std::uint64_t{1} << 20;

/// R-valued weights on O^V, dense in event-rank order.
struct Measure {
  MeasurementSet domain;
  std::vector<Element> weights;

  bool operator==(const Measure&) const = default;
};

/// One listed table entry: an event of the context and its weight.
using TableEntry = std::pair<JointEvent, Element>;

/// Per-context normalized R-measures over a scenario.
class EmpiricalModel {
 public:
  const Scenario& scenario() const { return scenario_; }
  const SemiringSpec& semiring() const { return semiring_; }

  /// Dense table of context `context`, indexed by event rank.
  const std::vector<Element>& table(int context) const { return tables_.at(context); }
  const Element& weight(int context, std::uint64_t rank) const { return tables_.at(context).at(rank); }
  bool supported(int context, std::uint64_t rank) const { return !semiring_.is_zero(weight(context, rank)); }

 private:
  friend EmpiricalModel make_model(Scenario, SemiringSpec, const std::vector<std::vector<TableEntry>>&);
  EmpiricalModel(Scenario s, SemiringSpec r) : scenario_(std::move(s)), semiring_(std::move(r)) {}

  Scenario scenario_;
  SemiringSpec semiring_;
  std::vector<std::vector<Element>> tables_;
};

/// `tables[i]` lists entries of context i (scenario order). Unlisted events
/// weigh 0_R. Throws UnknownEvent for events outside their context or listed
/// twice, NotAnElement for non-members, NormalizationError when a context
/// does not sum to 1_R.
EmpiricalModel make_model(Scenario s, SemiringSpec r, const std::vector<std::vector<TableEntry>>& tables);

/// Same, from dense per-context tables in rank order.
EmpiricalModel make_model_dense(Scenario s, SemiringSpec r, const std::vector<std::vector<Element>>& tables);

/// Pushes the table of `context` forward to `target` (a subset of it).
/// Throws NotSubcontext.
Measure marginalize(const EmpiricalModel& m, int context, MeasurementSet target);

struct DisturbanceWitness {
  int first = 0;
  int second = 0;
  JointEvent event;  // on the intersection of the two contexts
  Element first_weight;
  Element second_weight;
};

struct NondisturbanceResult {
  bool nondisturbing = true;
  std::optional<DisturbanceWitness> witness;  // first violation found

  explicit operator bool() const { return nondisturbing; }
};

/// Pairwise agreement of marginals on every context intersection.
NondisturbanceResult is_nondisturbing(const EmpiricalModel& m);

/// mu(s) * [s] over the basis O^U.
FreeVector support_section(const EmpiricalModel& m, int context, const JointEvent& event);

/// Every global assignment X -> O in rank order. Throws TooLarge when there
/// are more than `cutoff`.
std::vector<JointEvent> global_sections(const Scenario& s, std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// 0/1 incidence of global assignments against (context, event) rows.
struct IncidenceMatrix {
  struct Row {
    int context;
    std::uint64_t event;  // rank within the context
  };
  std::vector<Row> rows;              // context order, then event rank
  std::vector<std::uint64_t> columns; // global ranks, increasing
  std::vector<std::vector<std::uint8_t>> entries;  // rows x columns

  Element entry(const SemiringSpec& r, std::size_t row, std::size_t column) const {
    return entries[row][column] ? r.one() : r.zero();
  }
};

IncidenceMatrix incidence_matrix(const Scenario& s, std::uint64_t cutoff = kDefaultEnumerationCutoff);

/// Table entries stacked in incidence-row order.
std::vector<Element> model_vector(const EmpiricalModel& m);

}  // namespace semicech
