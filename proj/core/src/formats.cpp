#include "semicech/formats.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "semicech/errors.hpp"

namespace semicech {

namespace {

using Json = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void shape_error(const std::string& pointer, const std::string& what) {
  throw SyntaxError(pointer + ": " + what, 0, 0);
}

const Json& field(const Json& object, const std::string& key, const std::string& pointer) {
  if (!object.is_object()) shape_error(pointer, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) shape_error(pointer, "missing field '" + key + "'");
  return *it;
}

std::string string_of(const Json& v, const std::string& pointer) {
  if (!v.is_string()) shape_error(pointer, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> strings_of(const Json& v, const std::string& pointer) {
  if (!v.is_array()) shape_error(pointer, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string_of(v[i], pointer + "/" + std::to_string(i)));
  return out;
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

template <class F>
auto relocate(const std::string& pointer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SyntaxError&) {
    throw;
  } catch (const Error& e) {
    if (!e.location().empty()) throw;
    e.rethrow_at(pointer);
    throw;
  }
}

}  // namespace

ModelDocument parse_document(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (auto pos = what.find("] "); pos != std::string::npos) what = what.substr(pos + 2);
    throw SyntaxError(what, line, column);
  }

  ModelDocument doc;
  if (!root.is_object()) shape_error("", "expected a top-level object");
  const Json& format = field(root, "format", "");
  if (!format.is_number_integer()) shape_error("/format", "expected an integer");
  doc.format = format.get<int>();
  if (auto it = root.find("name"); it != root.end()) doc.name = string_of(*it, "/name");
  if (auto it = root.find("source"); it != root.end()) doc.source = string_of(*it, "/source");
  doc.semiring = string_of(field(root, "semiring", ""), "/semiring");

  const Json& scenario = field(root, "scenario", "");
  doc.measurements = strings_of(field(scenario, "measurements", "/scenario"), "/scenario/measurements");
  const Json& outcomes = field(scenario, "outcomes", "/scenario");
  if (outcomes.is_array()) {
    const auto shared = strings_of(outcomes, "/scenario/outcomes");
    doc.outcomes.assign(doc.measurements.size(), shared);
  } else if (outcomes.is_object()) {
    for (const auto& name : doc.measurements) {
      const std::string pointer = "/scenario/outcomes/" + escape_pointer(name);
      doc.outcomes.push_back(strings_of(field(outcomes, name, "/scenario/outcomes"), pointer));
    }
    for (const auto& [key, value] : outcomes.items()) {
      if (std::find(doc.measurements.begin(), doc.measurements.end(), key) == doc.measurements.end()) {
        throw ScenarioError("outcomes given for undeclared measurement '" + key + "'",
                            "/scenario/outcomes/" + escape_pointer(key));
      }
    }
  } else {
    shape_error("/scenario/outcomes", "expected an array or an object");
  }
  const Json& contexts = field(scenario, "contexts", "/scenario");
  if (!contexts.is_array()) shape_error("/scenario/contexts", "expected an array");
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    doc.contexts.push_back(strings_of(contexts[i], "/scenario/contexts/" + std::to_string(i)));
  }

  const Json& tables = field(root, "tables", "");
  if (!tables.is_array()) shape_error("/tables", "expected an array");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const std::string pointer = "/tables/" + std::to_string(i);
    ModelDocument::Table table;
    table.context = strings_of(field(tables[i], "context", pointer), pointer + "/context");
    const Json& entries = field(tables[i], "entries", pointer);
    if (!entries.is_object()) shape_error(pointer + "/entries", "expected an object");
    for (const auto& [key, value] : entries.items()) {
      const std::string entry_pointer = pointer + "/entries/" + escape_pointer(key);
      if (value.is_string()) {
        table.entries.emplace_back(key, value.get<std::string>());
      } else if (value.is_number_integer()) {
        table.entries.emplace_back(key, value.dump());
      } else {
        shape_error(entry_pointer, "expected an exact value such as \"1/2\"");
      }
    }
    doc.tables.push_back(std::move(table));
  }
  return doc;
}

EmpiricalModel build_model(const ModelDocument& doc) {
  if (doc.format != 1) throw ScenarioError("unsupported format version " + std::to_string(doc.format), "/format");
  const SemiringSpec r = relocate("/semiring", [&] { return semiring_by_name(doc.semiring); });
  const Scenario s = relocate("/scenario", [&] { return Scenario::build(doc.measurements, doc.contexts, doc.outcomes); });

  std::vector<std::vector<TableEntry>> entries(s.context_count());
  std::vector<bool> seen(s.context_count(), false);
  for (std::size_t i = 0; i < doc.tables.size(); ++i) {
    const std::string pointer = "/tables/" + std::to_string(i);
    const auto& table = doc.tables[i];
    const MeasurementSet ctx = relocate(pointer + "/context", [&] { return s.measurement_set(table.context); });
    const auto index = s.context_index(ctx);
    if (!index) throw UnknownEvent("{" + s.set_label(ctx) + "} is not a maximal context", pointer + "/context");
    if (seen[*index]) throw UnknownEvent("second table for context {" + s.set_label(ctx) + "}", pointer);
    seen[*index] = true;

    std::vector<bool> listed(s.event_count(ctx), false);
    Element total = r.zero();
    for (const auto& [key, text] : table.entries) {
      const std::string entry_pointer = pointer + "/entries/" + escape_pointer(key);
      const auto event = s.parse_event(ctx, key);
      if (!event) throw UnknownEvent("'" + key + "' is not an event of {" + s.set_label(ctx) + "}", entry_pointer);
      const auto rank = s.rank(*event);
      if (listed[rank]) throw UnknownEvent("event listed twice", entry_pointer);
      listed[rank] = true;
      const auto value = parse_rational(text);
      if (!value) throw NotAnElement("'" + text + "' is not an exact rational", entry_pointer);
      relocate(entry_pointer, [&] { r.require(*value); });
      total = r.add(total, *value);
      entries[*index].emplace_back(*event, *value);
    }
    if (total != r.one()) {
      throw NormalizationError("context {" + s.set_label(ctx) + "} sums to " + format_rational(total) + ", expected 1",
                               pointer);
    }
  }
  for (int k = 0; k < s.context_count(); ++k) {
    if (!seen[k]) throw NormalizationError("no table for context {" + s.set_label(s.context(k)) + "}", "/tables");
  }
  return relocate("/tables", [&] { return make_model(s, r, entries); });
}

EmpiricalModel parse_model(const std::string& text) { return build_model(parse_document(text)); }

ModelDocument document_of(const EmpiricalModel& m, std::string name, std::string source) {
  const Scenario& s = m.scenario();
  ModelDocument doc;
  doc.name = std::move(name);
  doc.source = std::move(source);
  doc.semiring = m.semiring().name();
  doc.measurements = s.measurement_names();
  for (int i = 0; i < s.measurement_count(); ++i) doc.outcomes.push_back(s.outcome_labels(i));
  for (int k = 0; k < s.context_count(); ++k) {
    std::vector<std::string> names;
    for (int i : s.context(k).members()) names.push_back(s.measurement_name(i));
    doc.contexts.push_back(names);
    ModelDocument::Table table{names, {}};
    const auto& weights = m.table(k);
    for (std::uint64_t rank = 0; rank < weights.size(); ++rank) {
      if (m.semiring().is_zero(weights[rank])) continue;
      table.entries.emplace_back(s.event_label(s.unrank(s.context(k), rank)), format_rational(weights[rank]));
    }
    doc.tables.push_back(std::move(table));
  }
  return doc;
}

std::string serialize_document(const ModelDocument& doc) {
  Json root;
  root["format"] = doc.format;
  root["name"] = doc.name;
  root["source"] = doc.source;
  root["semiring"] = doc.semiring;
  Json scenario;
  scenario["measurements"] = doc.measurements;
  const bool shared = std::all_of(doc.outcomes.begin(), doc.outcomes.end(),
                                  [&](const auto& o) { return o == doc.outcomes.front(); });
  if (shared && !doc.outcomes.empty()) {
    scenario["outcomes"] = doc.outcomes.front();
  } else {
    Json per = Json::object();
    for (std::size_t i = 0; i < doc.measurements.size(); ++i) per[doc.measurements[i]] = doc.outcomes.at(i);
    scenario["outcomes"] = per;
  }
  scenario["contexts"] = doc.contexts;
  root["scenario"] = scenario;
  Json tables = Json::array();
  for (const auto& t : doc.tables) {
    Json entries = Json::object();
    for (const auto& [key, value] : t.entries) entries[key] = value;
    tables.push_back(Json{{"context", t.context}, {"entries", entries}});
  }
  root["tables"] = tables;
  return root.dump(2) + "\n";
}

namespace {

std::string certificate_label(const ObstructionResult& r) {
  if (const auto* s = std::get_if<SearchExhausted>(&r.certificate)) {
    return "search exhausted after " + std::to_string(s->nodes) + " nodes";
  }
  if (std::holds_alternative<FarkasCertificate>(r.certificate)) return "Farkas certificate";
  if (std::holds_alternative<RingInfeasible>(r.certificate)) return "no ring solution";
  return "";
}

std::string verdict_label(const std::optional<ObstructionResult>& r) {
  if (!r) return "-";
  std::string out = to_string(r->verdict);
  if (r->zero_measure) out += "*";
  return out;
}

std::string oracle_label(const Report& report, std::size_t i) {
  if (!report.oracle || i >= report.oracle->extendable.size() || !report.oracle->extendable[i]) return "-";
  return *report.oracle->extendable[i] ? "extendable" : "not extendable";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string global_label(const Scenario& s, std::uint64_t rank) {
  return s.event_label(s.unrank(s.all_measurements(), rank));
}

Json rational_map(const Scenario& s, const std::vector<Rational>& weights) {
  Json out = Json::object();
  for (std::uint64_t g = 0; g < weights.size(); ++g) {
    if (weights[g] != 0) out[global_label(s, g)] = format_rational(weights[g]);
  }
  return out;
}

std::string emit_text(const EmpiricalModel& m, const Report& report) {
  const Scenario& s = m.scenario();
  std::ostringstream out;
  out << "model: " << (report.name.empty() ? "(unnamed)" : report.name) << "\n";
  out << "semiring: " << m.semiring().name() << "\n";
  out << "measurements:";
  for (const auto& n : s.measurement_names()) out << " " << n;
  out << "\ncontexts:";
  for (const auto& c : s.contexts()) out << " " << s.set_label(c);
  out << "\n";
  if (report.disturbance) {
    out << "non-disturbing: no\n";
    out << "disturbance: " << *report.disturbance << "\n";
    out << "analyses skipped\n";
    return out.str();
  }
  out << "non-disturbing: yes\n";

  if (!report.sections.empty()) {
    const std::string classical_head =
        "classical[" + report.classical_ring +
        (report.classical_basis == ClassicalBasis::Support ? ",support" : "") + "]";
    const std::string generalized_head = "generalized[" + m.semiring().name() + "]";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"section", "measure"};
    if (report.classical) head.push_back(classical_head);
    if (report.generalized) head.push_back(generalized_head);
    if (report.oracle) head.push_back("oracle");
    rows.push_back(head);
    bool any_zero = false;
    for (std::size_t i = 0; i < report.sections.size(); ++i) {
      const auto& row = report.sections[i];
      const JointEvent e = s.unrank(s.context(row.context), row.event);
      std::vector<std::string> cells{s.section_label(e), format_rational(m.weight(row.context, row.event))};
      if (report.classical) cells.push_back(verdict_label(row.classical));
      if (report.generalized) cells.push_back(verdict_label(row.generalized));
      if (report.oracle) cells.push_back(oracle_label(report, i));
      any_zero = any_zero || row.zero_measure;
      rows.push_back(std::move(cells));
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    out << "sections:\n";
    for (const auto& r : rows) {
      std::string line = " ";
      for (std::size_t c = 0; c < r.size(); ++c) line += " " + (c + 1 < r.size() ? pad(r[c], width[c]) : r[c]);
      out << line << "\n";
    }
    if (any_zero) out << "  * measure-zero section\n";
  }
  if (report.verdict) {
    out << "verdict: " << to_string(*report.verdict);
    if (report.verdict_witness) out << ", witness " << *report.verdict_witness;
    out << "\n";
  }
  if (report.fraction) {
    out << "contextual fraction: " << format_rational(report.fraction->value)
        << (report.fraction->certified ? " (dual certificate verified)" : " (dual certificate FAILED)") << "\n";
  }
  if (report.oracle) {
    std::size_t checked = 0;
    for (const auto& v : report.oracle->extendable) checked += v.has_value();
    out << "oracle: " << checked << " sections checked, " << report.oracle->mismatches.size() << " mismatches\n";
    for (const auto& label : report.oracle->mismatches) out << "  MISMATCH " << label << "\n";
  }
  return out.str();
}

std::string emit_json(const EmpiricalModel& m, const Report& report) {
  const Scenario& s = m.scenario();
  Json root;
  root["model"] = report.name;
  root["semiring"] = m.semiring().name();
  root["measurements"] = s.measurement_names();
  Json contexts = Json::array();
  for (const auto& c : s.contexts()) contexts.push_back(s.set_label(c));
  root["contexts"] = contexts;
  root["nondisturbing"] = !report.disturbance.has_value();
  if (report.disturbance) {
    root["disturbance"] = *report.disturbance;
    return root.dump(2) + "\n";
  }
  if (report.classical) {
    root["classical_ring"] = report.classical_ring;
    root["classical_basis"] = report.classical_basis == ClassicalBasis::Support ? "support" : "events";
  }
  Json sections = Json::array();
  for (std::size_t i = 0; i < report.sections.size(); ++i) {
    const auto& row = report.sections[i];
    const JointEvent e = s.unrank(s.context(row.context), row.event);
    Json entry;
    entry["section"] = s.section_label(e);
    entry["context"] = s.set_label(e.domain);
    entry["event"] = s.event_label(e);
    entry["measure"] = format_rational(m.weight(row.context, row.event));
    entry["zero_measure"] = row.zero_measure;
    if (row.classical) {
      entry["classical"] = to_string(row.classical->verdict);
      if (!row.classical->trivial()) entry["classical_certificate"] = certificate_label(*row.classical);
    }
    if (row.generalized) {
      entry["generalized"] = to_string(row.generalized->verdict);
      if (!row.generalized->trivial()) entry["generalized_certificate"] = certificate_label(*row.generalized);
    }
    if (report.oracle && i < report.oracle->extendable.size() && report.oracle->extendable[i]) {
      entry["oracle"] = *report.oracle->extendable[i] ? "extendable" : "not extendable";
    }
    sections.push_back(entry);
  }
  if (!report.sections.empty()) root["sections"] = sections;
  if (report.verdict) {
    root["verdict"] = to_string(*report.verdict);
    if (report.verdict_witness) root["witness"] = *report.verdict_witness;
  }
  if (report.fraction) {
    root["contextual_fraction"] = Json{{"value", format_rational(report.fraction->value)},
                                       {"certified", report.fraction->certified},
                                       {"weights", rational_map(s, report.fraction->weights)}};
  }
  if (report.oracle) {
    std::size_t checked = 0;
    for (const auto& v : report.oracle->extendable) checked += v.has_value();
    root["oracle"] = Json{{"checked", checked}, {"mismatches", report.oracle->mismatches}};
  }
  return root.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const EmpiricalModel& m, const Report& report, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(m, report) : emit_text(m, report);
}

}  // namespace semicech
