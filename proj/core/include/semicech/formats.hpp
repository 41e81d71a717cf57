#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semicech/analysis.hpp"
#include "semicech/model.hpp"
#include "semicech/obstruction.hpp"

namespace semicech {

/// In-memory form of a `.model` file. Event keys and values are kept as
/// written; build_model validates them.
struct ModelDocument {
  int format = 1;
  std::string name;
  std::string source;
  std::string semiring;
  std::vector<std::string> measurements;
  /// Per measurement, aligned with `measurements`.
  std::vector<std::vector<std::string>> outcomes;
  std::vector<std::vector<std::string>> contexts;

  struct Table {
    std::vector<std::string> context;
    std::vector<std::pair<std::string, std::string>> entries;  // event key, value
  };
  std::vector<Table> tables;

  bool operator==(const ModelDocument&) const = default;
};

/// JSON text to document. Throws SyntaxError (with line and column) for
/// malformed JSON and for missing or mistyped fields.
ModelDocument parse_document(const std::string& text);

/// Validates through Scenario::build and make_model. Errors keep their type
/// and carry a JSON pointer to the offending field.
EmpiricalModel build_model(const ModelDocument& doc);

/// parse_document followed by build_model.
EmpiricalModel parse_model(const std::string& text);

/// Canonical document of a model: sorted measurements, canonical context
/// order, nonzero entries only, in event order.
ModelDocument document_of(const EmpiricalModel& m, std::string name = {}, std::string source = {});

/// Canonical JSON text (two-space indent, trailing newline).
std::string serialize_document(const ModelDocument& doc);

/// Per-section brute-force cross-check results.
struct OracleCheck {
  std::vector<std::optional<bool>> extendable;  // aligned with Report::sections
  std::vector<std::string> mismatches;          // section labels
};

/// Everything an analysis run produced.
struct Report {
  std::string name;
  /// Set when the model is disturbing; all analyses are then skipped.
  std::optional<std::string> disturbance;
  bool classical = false;
  std::string classical_ring;
  ClassicalBasis classical_basis = ClassicalBasis::FullEvents;
  bool generalized = false;
  std::vector<SectionOutcome> sections;
  std::optional<Contextuality> verdict;
  std::optional<std::string> verdict_witness;
  std::optional<FractionResult> fraction;
  std::optional<OracleCheck> oracle;
};

enum class ReportFormat { Text, Json };

/// Deterministic rendering; sections appear in canonical order.
std::string emit_report(const EmpiricalModel& m, const Report& report, ReportFormat format = ReportFormat::Text);

}  // namespace semicech
