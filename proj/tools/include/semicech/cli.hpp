#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "semicech/formats.hpp"

namespace semicech::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kSyntax = 1,
  kSemantic = 2,
  kDisturbing = 3,
  kTooLarge = 4,
  kOracleMismatch = 5,
  kExpectationFailed = 6,
  kUsage = 64,
};

struct AnalyzeOptions {
  std::string path;
  /// Reinterpret the tables over another semiring ("boolean" takes the
  /// support).
  std::optional<std::string> semiring;
  bool classical = false;
  bool generalized = false;
  bool fraction = false;
  bool oracle = false;
  std::string classical_ring = "integer";
  ClassicalBasis classical_basis = ClassicalBasis::FullEvents;
  std::uint64_t cutoff = kDefaultEnumerationCutoff;
  std::optional<std::string> out;
  ReportFormat format = ReportFormat::Text;
};

struct CorpusOptions {
  std::string dir;
  bool write_expectations = false;
  /// Additional seeded random models checked against the oracle.
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::uint64_t cutoff = kDefaultEnumerationCutoff;
};

/// Runs the selected analyses. With no analysis selected: classical and
/// generalized, plus the contextual fraction for nonnegative rational
/// models. Disturbing models yield a report with only `disturbance` set.
Report analyze_model(const EmpiricalModel& m, std::string name, const AnalyzeOptions& options);

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);
int cmd_corpus(const CorpusOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semicech::cli
