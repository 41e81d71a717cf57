#include "semicech/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "semicech/errors.hpp"

namespace semicech {

std::vector<int> MeasurementSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t bits = bits_; bits != 0; bits &= bits - 1) {
    out.push_back(std::countr_zero(bits));
  }
  return out;
}

int JointEvent::outcome_of(int index) const {
  if (!domain.contains(index)) throw NotSubset("measurement not in event domain");
  const std::uint64_t below = domain.bits() & ((std::uint64_t{1} << index) - 1);
  return outcomes.at(std::popcount(below));
}

Scenario Scenario::build(std::vector<std::string> measurements,
                         const std::vector<std::vector<std::string>>& contexts,
                         std::vector<std::vector<std::string>> outcomes) {
  if (measurements.empty()) throw ScenarioError("scenario has no measurements");
  if (measurements.size() > 64) throw ScenarioError("at most 64 measurements are supported");
  if (outcomes.size() != measurements.size()) {
    throw ScenarioError("one outcome list is required per measurement");
  }
  if (contexts.empty()) throw ScenarioError("scenario has no contexts");

  std::vector<std::size_t> order(measurements.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return measurements[a] < measurements[b]; });

  Scenario s;
  for (std::size_t i : order) {
    if (measurements[i].empty()) throw ScenarioError("empty measurement name");
    if (!s.names_.empty() && s.names_.back() == measurements[i]) {
      throw ScenarioError("duplicate measurement '" + measurements[i] + "'");
    }
    auto& labels = outcomes[i];
    if (labels.empty()) throw EmptyOutcome("measurement '" + measurements[i] + "' has no outcomes");
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != labels.size() || unique.count("")) {
      throw ScenarioError("outcome labels of '" + measurements[i] + "' must be distinct and nonempty");
    }
    s.names_.push_back(measurements[i]);
    s.outcomes_.push_back(std::move(labels));
  }

  for (const auto& names : contexts) {
    if (names.empty()) throw ScenarioError("empty context");
    MeasurementSet set;
    for (const auto& name : names) {
      const int index = s.measurement_index(name);
      if (set.contains(index)) throw ScenarioError("measurement '" + name + "' repeated in a context");
      set = set | MeasurementSet::single(index);
    }
    s.contexts_.push_back(set);
  }
  std::sort(s.contexts_.begin(), s.contexts_.end(), [](MeasurementSet a, MeasurementSet b) {
    return a.members() < b.members();
  });

  for (std::size_t i = 0; i < s.contexts_.size(); ++i) {
    for (std::size_t j = 0; j < s.contexts_.size(); ++j) {
      if (i != j && s.contexts_[i].subset_of(s.contexts_[j])) {
        throw MaximalityError("context {" + s.set_label(s.contexts_[i]) + "} is contained in {" +
                              s.set_label(s.contexts_[j]) + "}");
      }
    }
  }
  MeasurementSet covered;
  for (auto c : s.contexts_) covered = covered | c;
  for (int m = 0; m < s.measurement_count(); ++m) {
    if (!covered.contains(m)) {
      throw CoverageError("measurement '" + s.names_[m] + "' belongs to no context");
    }
  }
  return s;
}

Scenario Scenario::build_uniform(std::vector<std::string> measurements,
                                 const std::vector<std::vector<std::string>>& contexts,
                                 const std::vector<std::string>& outcome_labels) {
  std::vector<std::vector<std::string>> outcomes(measurements.size(), outcome_labels);
  return build(std::move(measurements), contexts, std::move(outcomes));
}

int Scenario::measurement_index(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) throw ScenarioError("unknown measurement '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

std::vector<std::string> Scenario::common_outcomes() const {
  std::set<std::string> all;
  for (const auto& labels : outcomes_) all.insert(labels.begin(), labels.end());
  return {all.begin(), all.end()};
}

std::optional<int> Scenario::context_index(MeasurementSet set) const {
  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    if (contexts_[i] == set) return static_cast<int>(i);
  }
  return std::nullopt;
}

MeasurementSet Scenario::all_measurements() const {
  const int n = measurement_count();
  return MeasurementSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

MeasurementSet Scenario::measurement_set(const std::vector<std::string>& names) const {
  MeasurementSet set;
  for (const auto& name : names) set = set | MeasurementSet::single(measurement_index(name));
  return set;
}

std::uint64_t Scenario::event_count(MeasurementSet set) const {
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  std::uint64_t count = 1;
  for (int m : set.members()) {
    const auto n = static_cast<std::uint64_t>(outcomes_.at(m).size());
    if (count > limit / n) throw TooLarge("joint outcome space exceeds 2^62 events");
    count *= n;
  }
  return count;
}

std::uint64_t Scenario::rank(const JointEvent& event) const {
  std::uint64_t r = 0;
  const auto members = event.domain.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    r = r * static_cast<std::uint64_t>(outcomes_[members[i]].size()) +
        static_cast<std::uint64_t>(event.outcomes[i]);
  }
  return r;
}

JointEvent Scenario::unrank(MeasurementSet set, std::uint64_t rank) const {
  const auto members = set.members();
  JointEvent event{set, std::vector<int>(members.size())};
  for (std::size_t i = members.size(); i-- > 0;) {
    const auto n = static_cast<std::uint64_t>(outcomes_[members[i]].size());
    event.outcomes[i] = static_cast<int>(rank % n);
    rank /= n;
  }
  return event;
}

std::uint64_t Scenario::restrict_rank(MeasurementSet from, std::uint64_t rank, MeasurementSet to) const {
  return this->rank(restrict_event(unrank(from, rank), to));
}

std::vector<JointEvent> Scenario::events(MeasurementSet set) const {
  const std::uint64_t n = event_count(set);
  std::vector<JointEvent> out;
  out.reserve(n);
  for (std::uint64_t r = 0; r < n; ++r) out.push_back(unrank(set, r));
  return out;
}

bool Scenario::compact_names() const {
  return std::all_of(names_.begin(), names_.end(), [](const auto& n) { return n.size() == 1; });
}

bool Scenario::compact_outcomes() const {
  for (const auto& labels : outcomes_) {
    for (const auto& l : labels) {
      if (l.size() != 1 || l == ",") return false;
    }
  }
  return true;
}

std::string Scenario::set_label(MeasurementSet set) const {
  std::string out;
  const bool compact = compact_names();
  for (int m : set.members()) {
    if (!compact && !out.empty()) out += ',';
    out += names_[m];
  }
  return out;
}

std::string Scenario::event_label(const JointEvent& event) const {
  std::string out;
  const bool compact = compact_outcomes();
  const auto members = event.domain.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += outcomes_[members[i]].at(event.outcomes[i]);
  }
  return out;
}

std::string Scenario::section_label(const JointEvent& event) const {
  return "(" + set_label(event.domain) + ")->(" + event_label(event) + ")";
}

std::optional<JointEvent> Scenario::parse_event(MeasurementSet set, const std::string& label) const {
  const auto members = set.members();
  std::vector<std::string> parts;
  if (compact_outcomes()) {
    for (char c : label) parts.emplace_back(1, c);
  } else {
    std::size_t start = 0;
    while (true) {
      auto comma = label.find(',', start);
      parts.push_back(label.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (members.empty() && label.empty()) parts.clear();
  }
  if (parts.size() != members.size()) return std::nullopt;
  JointEvent event{set, {}};
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& labels = outcomes_[members[i]];
    auto it = std::find(labels.begin(), labels.end(), parts[i]);
    if (it == labels.end()) return std::nullopt;
    event.outcomes.push_back(static_cast<int>(it - labels.begin()));
  }
  return event;
}

namespace {

void extend_simplices(const Scenario& s, std::vector<int>& prefix, MeasurementSet running, int max_q,
                      std::vector<std::vector<Simplex>>& levels) {
  const int q = static_cast<int>(prefix.size()) - 1;
  levels[q].push_back({prefix, running});
  if (q == max_q) return;
  for (int next = prefix.back() + 1; next < s.context_count(); ++next) {
    const MeasurementSet meet = running & s.context(next);
    if (meet.empty()) continue;
    prefix.push_back(next);
    extend_simplices(s, prefix, meet, max_q, levels);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Simplex>> nerve(const Scenario& s, int max_q) {
  if (max_q < 0) throw ScenarioError("nerve dimension must be non-negative");
  std::vector<std::vector<Simplex>> levels(max_q + 1);
  for (int start = 0; start < s.context_count(); ++start) {
    std::vector<int> prefix{start};
    extend_simplices(s, prefix, s.context(start), max_q, levels);
  }
  for (auto& level : levels) {
    std::sort(level.begin(), level.end(),
              [](const Simplex& a, const Simplex& b) { return a.contexts < b.contexts; });
  }
  return levels;
}

Nerve::Nerve(Scenario scenario, int max_q) : scenario_(std::move(scenario)), levels_(nerve(scenario_, max_q)) {}

const std::vector<Simplex>& Nerve::simplices(int q) const {
  static const std::vector<Simplex> none;
  if (q < 0 || q > max_q()) return none;
  return levels_[q];
}

std::optional<std::size_t> Nerve::index_of(const std::vector<int>& contexts) const {
  const int q = static_cast<int>(contexts.size()) - 1;
  if (q < 0 || q > max_q()) return std::nullopt;
  const auto& level = levels_[q];
  auto it = std::lower_bound(level.begin(), level.end(), contexts,
                             [](const Simplex& s, const std::vector<int>& key) { return s.contexts < key; });
  if (it == level.end() || it->contexts != contexts) return std::nullopt;
  return static_cast<std::size_t>(it - level.begin());
}

Simplex face(const Scenario& s, const Simplex& sigma, int k) {
  if (k < 0 || k > sigma.dimension()) throw ScenarioError("face index out of range");
  Simplex out;
  MeasurementSet meet = s.all_measurements();
  for (int i = 0; i <= sigma.dimension(); ++i) {
    if (i == k) continue;
    out.contexts.push_back(sigma.contexts[i]);
    meet = meet & s.context(sigma.contexts[i]);
  }
  out.intersection = out.contexts.empty() ? MeasurementSet{} : meet;
  return out;
}

JointEvent restrict_event(const JointEvent& event, MeasurementSet target) {
  if (!target.subset_of(event.domain)) throw NotSubset("restriction target is not a subset of the event domain");
  JointEvent out{target, {}};
  out.outcomes.reserve(target.size());
  const auto members = event.domain.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (target.contains(members[i])) out.outcomes.push_back(event.outcomes[i]);
  }
  return out;
}

}  // namespace semicech
