#include "semicech/model.hpp"

#include "semicech/errors.hpp"

namespace semicech {

EmpiricalModel make_model(Scenario s, SemiringSpec r, const std::vector<std::vector<TableEntry>>& tables) {
  if (static_cast<int>(tables.size()) != s.context_count()) {
    throw UnknownEvent("expected one table per maximal context (" + std::to_string(s.context_count()) +
                       "), got " + std::to_string(tables.size()));
  }
  EmpiricalModel m(std::move(s), std::move(r));
  const Scenario& sc = m.scenario_;
  const SemiringSpec& ring = m.semiring_;
  for (int c = 0; c < sc.context_count(); ++c) {
    const MeasurementSet ctx = sc.context(c);
    std::vector<Element> dense(sc.event_count(ctx), ring.zero());
    std::vector<bool> seen(dense.size(), false);
    for (const auto& [event, value] : tables[c]) {
      if (event.domain != ctx || event.outcomes.size() != static_cast<std::size_t>(ctx.size())) {
        throw UnknownEvent("event does not belong to context {" + sc.set_label(ctx) + "}");
      }
      for (std::size_t i = 0; i < event.outcomes.size(); ++i) {
        if (event.outcomes[i] < 0 || event.outcomes[i] >= sc.outcome_count(ctx.members()[i])) {
          throw UnknownEvent("outcome index out of range in context {" + sc.set_label(ctx) + "}");
        }
      }
      const auto rank = sc.rank(event);
      if (seen[rank]) {
        throw UnknownEvent("event " + sc.section_label(event) + " listed twice");
      }
      seen[rank] = true;
      dense[rank] = ring.require(value);
    }
    m.tables_.push_back(std::move(dense));
  }
  for (int c = 0; c < sc.context_count(); ++c) {
    const Element total = ring.sum(m.tables_[c]);
    if (total != ring.one()) {
      throw NormalizationError("context {" + sc.set_label(sc.context(c)) + "} sums to " +
                               format_rational(total) + ", expected 1");
    }
  }
  return m;
}

EmpiricalModel make_model_dense(Scenario s, SemiringSpec r, const std::vector<std::vector<Element>>& tables) {
  std::vector<std::vector<TableEntry>> entries(tables.size());
  for (std::size_t c = 0; c < tables.size() && c < static_cast<std::size_t>(s.context_count()); ++c) {
    const MeasurementSet ctx = s.context(static_cast<int>(c));
    if (tables[c].size() != s.event_count(ctx)) {
      throw UnknownEvent("dense table of context {" + s.set_label(ctx) + "} has the wrong length");
    }
    for (std::uint64_t rank = 0; rank < tables[c].size(); ++rank) {
      if (tables[c][rank] != 0) entries[c].emplace_back(s.unrank(ctx, rank), tables[c][rank]);
    }
  }
  return make_model(std::move(s), std::move(r), entries);
}

Measure marginalize(const EmpiricalModel& m, int context, MeasurementSet target) {
  const Scenario& s = m.scenario();
  const MeasurementSet ctx = s.context(context);
  if (!target.subset_of(ctx)) {
    throw NotSubcontext("{" + s.set_label(target) + "} is not contained in context {" + s.set_label(ctx) + "}");
  }
  const SemiringSpec& r = m.semiring();
  Measure out{target, std::vector<Element>(s.event_count(target), r.zero())};
  const auto& table = m.table(context);
  for (std::uint64_t rank = 0; rank < table.size(); ++rank) {
    if (r.is_zero(table[rank])) continue;
    auto& slot = out.weights[s.restrict_rank(ctx, rank, target)];
    slot = r.add(slot, table[rank]);
  }
  return out;
}

NondisturbanceResult is_nondisturbing(const EmpiricalModel& m) {
  const Scenario& s = m.scenario();
  for (int j = 0; j < s.context_count(); ++j) {
    for (int k = j + 1; k < s.context_count(); ++k) {
      const MeasurementSet meet = s.context(j) & s.context(k);
      const Measure a = marginalize(m, j, meet);
      const Measure b = marginalize(m, k, meet);
      for (std::uint64_t rank = 0; rank < a.weights.size(); ++rank) {
        if (a.weights[rank] != b.weights[rank]) {
          return {false, DisturbanceWitness{j, k, s.unrank(meet, rank), a.weights[rank], b.weights[rank]}};
        }
      }
    }
  }
  return {};
}

FreeVector support_section(const EmpiricalModel& m, int context, const JointEvent& event) {
  const Scenario& s = m.scenario();
  if (event.domain != s.context(context)) throw UnknownEvent("event does not belong to the context");
  return FreeVector::basis(s, event, m.weight(context, s.rank(event)));
}

std::vector<JointEvent> global_sections(const Scenario& s, std::uint64_t cutoff) {
  const MeasurementSet all = s.all_measurements();
  std::uint64_t count = 0;
  try {
    count = s.event_count(all);
  } catch (const TooLarge&) {
    throw TooLarge("global assignment space exceeds the enumeration cutoff " + std::to_string(cutoff));
  }
  if (count > cutoff) {
    throw TooLarge(std::to_string(count) + " global assignments exceed the enumeration cutoff " +
                   std::to_string(cutoff));
  }
  return s.events(all);
}

IncidenceMatrix incidence_matrix(const Scenario& s, std::uint64_t cutoff) {
  const auto globals = global_sections(s, cutoff);
  const MeasurementSet all = s.all_measurements();
  IncidenceMatrix out;
  for (int c = 0; c < s.context_count(); ++c) {
    const std::uint64_t n = s.event_count(s.context(c));
    for (std::uint64_t e = 0; e < n; ++e) out.rows.push_back({c, e});
  }
  out.columns.reserve(globals.size());
  for (std::uint64_t g = 0; g < globals.size(); ++g) out.columns.push_back(g);

  // Row offsets per context so each column touches one row per block.
  std::vector<std::size_t> offset(s.context_count(), 0);
  for (int c = 1; c < s.context_count(); ++c) {
    offset[c] = offset[c - 1] + s.event_count(s.context(c - 1));
  }
  out.entries.assign(out.rows.size(), std::vector<std::uint8_t>(globals.size(), 0));
  for (std::uint64_t g = 0; g < globals.size(); ++g) {
    for (int c = 0; c < s.context_count(); ++c) {
      out.entries[offset[c] + s.restrict_rank(all, g, s.context(c))][g] = 1;
    }
  }
  return out;
}

std::vector<Element> model_vector(const EmpiricalModel& m) {
  std::vector<Element> p;
  for (int c = 0; c < m.scenario().context_count(); ++c) {
    const auto& t = m.table(c);
    p.insert(p.end(), t.begin(), t.end());
  }
  return p;
}

}  // namespace semicech
