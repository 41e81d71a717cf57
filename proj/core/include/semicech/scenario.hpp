#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semicech {

/// Subset of a scenario's measurements, as a bitmask over measurement
/// indices (at most 64 measurements).
class MeasurementSet {
 public:
  constexpr MeasurementSet() = default;
  constexpr explicit MeasurementSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr MeasurementSet single(int index) { return MeasurementSet(std::uint64_t{1} << index); }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool contains(int index) const noexcept { return (bits_ >> index) & 1u; }
  constexpr bool subset_of(MeasurementSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  constexpr MeasurementSet operator&(MeasurementSet o) const noexcept { return MeasurementSet(bits_ & o.bits_); }
  constexpr MeasurementSet operator|(MeasurementSet o) const noexcept { return MeasurementSet(bits_ | o.bits_); }

  /// Member indices in increasing order.
  std::vector<int> members() const;

  constexpr bool operator==(const MeasurementSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Joint outcome assignment on a set of measurements. `outcomes[i]` is the
/// outcome index of the i-th member of `domain` (increasing index order).
struct JointEvent {
  MeasurementSet domain;
  std::vector<int> outcomes;

  /// Outcome index of measurement `index`, which must belong to the domain.
  int outcome_of(int index) const;

  bool operator==(const JointEvent&) const = default;
};

/// Strictly increasing tuple of context indices with nonempty intersection.
struct Simplex {
  std::vector<int> contexts;
  MeasurementSet intersection;

  int dimension() const { return static_cast<int>(contexts.size()) - 1; }
  bool operator==(const Simplex&) const = default;
};

/// Measurements, a cover by maximal contexts, and per-measurement outcome
/// sets. Measurements are kept sorted by name; contexts are sorted
/// lexicographically by their sorted member names, which fixes the ordered
/// nerve.
class Scenario {
 public:
  /// Validates and canonicalizes. `outcomes[i]` lists the outcome labels of
  /// `measurements[i]`.
  static Scenario build(std::vector<std::string> measurements,
                        const std::vector<std::vector<std::string>>& contexts,
                        std::vector<std::vector<std::string>> outcomes);

  /// Convenience: every measurement gets the same outcome labels.
  static Scenario build_uniform(std::vector<std::string> measurements,
                                const std::vector<std::vector<std::string>>& contexts,
                                const std::vector<std::string>& outcome_labels);

  int measurement_count() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& measurement_names() const { return names_; }
  const std::string& measurement_name(int index) const { return names_.at(index); }
  /// Throws ScenarioError for unknown names.
  int measurement_index(const std::string& name) const;

  const std::vector<std::string>& outcome_labels(int measurement) const { return outcomes_.at(measurement); }
  int outcome_count(int measurement) const { return static_cast<int>(outcomes_.at(measurement).size()); }
  /// Union of all outcome labels (the common outcome set), sorted.
  std::vector<std::string> common_outcomes() const;

  const std::vector<MeasurementSet>& contexts() const { return contexts_; }
  int context_count() const { return static_cast<int>(contexts_.size()); }
  const MeasurementSet& context(int index) const { return contexts_.at(index); }
  /// Index of a maximal context, or nullopt.
  std::optional<int> context_index(MeasurementSet set) const;
  MeasurementSet all_measurements() const;
  /// Parses a list of measurement names into a set; throws ScenarioError.
  MeasurementSet measurement_set(const std::vector<std::string>& names) const;

  /// |O^V|. Throws TooLarge past 2^62.
  std::uint64_t event_count(MeasurementSet set) const;
  /// Position of an event in the lexicographic order of O^V (first member
  /// most significant).
  std::uint64_t rank(const JointEvent& event) const;
  JointEvent unrank(MeasurementSet set, std::uint64_t rank) const;
  /// rank(restrict_event(unrank(from, r), to)).
  std::uint64_t restrict_rank(MeasurementSet from, std::uint64_t rank, MeasurementSet to) const;
  std::vector<JointEvent> events(MeasurementSet set) const;

  /// Text forms used by files and reports: names / outcome labels
  /// concatenated when all of them are single characters, comma-joined
  /// otherwise.
  std::string set_label(MeasurementSet set) const;
  std::string event_label(const JointEvent& event) const;
  std::string section_label(const JointEvent& event) const;  // "(ab)->(01)"
  /// Inverse of event_label; nullopt when malformed.
  std::optional<JointEvent> parse_event(MeasurementSet set, const std::string& label) const;

  bool operator==(const Scenario&) const = default;

 private:
  Scenario() = default;
  bool compact_names() const;
  bool compact_outcomes() const;

  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> outcomes_;
  std::vector<MeasurementSet> contexts_;
};

/// Ordered nerve N(U) up to a maximum dimension. Dimension 0 lists the
/// contexts themselves.
class Nerve {
 public:
  explicit Nerve(Scenario scenario, int max_q = 2);

  const Scenario& scenario() const { return scenario_; }
  int max_q() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<Simplex>& simplices(int q) const;
  /// Position of a simplex (by its context tuple) within dimension q.
  std::optional<std::size_t> index_of(const std::vector<int>& contexts) const;

 private:
  Scenario scenario_;
  std::vector<std::vector<Simplex>> levels_;
};

/// Simplices of each dimension 0..max_q (plain enumeration, same as Nerve).
std::vector<std::vector<Simplex>> nerve(const Scenario& s, int max_q = 2);

/// Omits the k-th context and recomputes the intersection.
Simplex face(const Scenario& s, const Simplex& sigma, int k);

/// Throws NotSubset when `target` is not contained in the event's domain.
JointEvent restrict_event(const JointEvent& event, MeasurementSet target);

}  // namespace semicech
