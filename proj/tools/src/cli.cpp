#include "semicech/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semicech/errors.hpp"
#include "semicech/oracle.hpp"
#include "semicech/random_models.hpp"

namespace semicech::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string describe(const Scenario& s, const DisturbanceWitness& w) {
  return "contexts {" + s.set_label(s.context(w.first)) + "} and {" + s.set_label(s.context(w.second)) +
         "} give " + s.section_label(w.event) + " the marginals " + format_rational(w.first_weight) + " and " +
         format_rational(w.second_weight);
}

EmpiricalModel reinterpret(const EmpiricalModel& m, const std::string& name) {
  if (name == m.semiring().name()) return m;
  const SemiringSpec target = semiring_by_name(name);
  if (target.is_boolean()) return possibilistic_collapse(m);
  std::vector<std::vector<Element>> tables;
  for (int k = 0; k < m.scenario().context_count(); ++k) tables.push_back(m.table(k));
  return make_model_dense(m.scenario(), target, tables);
}

bool is_nonneg_rational(const SemiringSpec& r) {
  return !r.is_boolean() && r.has_division() && !r.has_negation();
}

std::string section_name(const EmpiricalModel& m, const SectionOutcome& row) {
  const Scenario& s = m.scenario();
  return s.section_label(s.unrank(s.context(row.context), row.event));
}

// Maps library errors onto exit codes, printing the diagnostic.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kSyntax;
  } catch (const TooLarge& e) {
    err << "too large: " << e.what() << "\n";
    return kTooLarge;
  } catch (const Disturbing& e) {
    err << "disturbing: " << e.what() << "\n";
    return kDisturbing;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSyntax;
  }
}

const char* provenance_for(const std::string& stem) {
  if (stem == "table1") return "literature";
  if (stem.rfind("deterministic", 0) == 0 || stem == "fully_mixed") return "definition";
  return "oracle";
}

Json expectations_for(const EmpiricalModel& m, const std::string& stem, std::uint64_t cutoff) {
  const Scenario& s = m.scenario();
  Json e;
  e["model"] = stem;
  e["semiring"] = m.semiring().name();
  e["provenance"] = provenance_for(stem);
  const auto nd = is_nondisturbing(m);
  e["disturbing"] = !nd.nondisturbing;
  if (!nd) return e;
  e["classical_ring"] = "integer";
  e["verdict"] = noncontextual_decompose(m, cutoff) ? "noncontextual" : "contextual";
  if (is_nonneg_rational(m.semiring())) e["contextual_fraction"] = format_rational(contextual_fraction(m, cutoff).value);
  Json sections = Json::object();
  const SemiringSpec ring = make_integer();
  for (int k = 0; k < s.context_count(); ++k) {
    for (const auto& event : s.events(s.context(k))) {
      Json row;
      row["classical"] = to_string(classical_obstruction(m, k, event, ring).verdict);
      row["generalized"] = extendability_oracle(m, k, event, cutoff).extendable ? "trivial" : "nontrivial";
      sections[s.section_label(event)] = row;
    }
  }
  e["sections"] = sections;
  return e;
}

std::vector<std::string> compare(const EmpiricalModel& m, const Report& report, const Json& expected) {
  std::vector<std::string> diffs;
  auto expect = [&](const std::string& what, const std::string& want, const std::string& got) {
    if (want != got) diffs.push_back(what + ": expected " + want + ", got " + got);
  };
  expect("disturbing", expected.value("disturbing", false) ? "true" : "false",
         report.disturbance ? "true" : "false");
  if (report.disturbance) return diffs;
  if (expected.contains("verdict")) {
    expect("verdict", expected["verdict"].get<std::string>(), report.verdict ? to_string(*report.verdict) : "-");
  }
  if (expected.contains("contextual_fraction")) {
    expect("contextual fraction", expected["contextual_fraction"].get<std::string>(),
           report.fraction ? format_rational(report.fraction->value) : "-");
  }
  if (expected.contains("sections")) {
    std::map<std::string, const SectionOutcome*> rows;
    for (const auto& row : report.sections) rows[section_name(m, row)] = &row;
    for (const auto& [label, want] : expected["sections"].items()) {
      const auto it = rows.find(label);
      if (it == rows.end()) {
        diffs.push_back("section " + label + ": missing from the report");
        continue;
      }
      for (const char* kind : {"classical", "generalized"}) {
        if (!want.contains(kind)) continue;
        const auto& result = std::string(kind) == "classical" ? it->second->classical : it->second->generalized;
        expect("section " + label + " " + kind, want[kind].get<std::string>(),
               result ? to_string(result->verdict) : "-");
      }
    }
  }
  if (report.oracle) {
    for (const auto& label : report.oracle->mismatches) diffs.push_back("oracle mismatch at " + label);
  }
  return diffs;
}

}  // namespace

Report analyze_model(const EmpiricalModel& m, std::string name, const AnalyzeOptions& options) {
  Report report;
  report.name = std::move(name);
  const auto nd = is_nondisturbing(m);
  if (!nd) {
    report.disturbance = describe(m.scenario(), *nd.witness);
    return report;
  }
  bool classical = options.classical;
  bool generalized = options.generalized;
  bool fraction = options.fraction;
  if (!classical && !generalized && !fraction) {
    classical = true;
    generalized = true;
    fraction = is_nonneg_rational(m.semiring());
  }
  generalized = generalized || options.oracle;

  SweepOptions sweep;
  sweep.classical = classical;
  sweep.generalized = generalized;
  sweep.classical_ring = semiring_by_name(options.classical_ring);
  sweep.classical_basis = options.classical_basis;
  sweep.cutoff = options.cutoff;
  report.classical = classical;
  report.classical_ring = options.classical_ring;
  report.classical_basis = options.classical_basis;
  report.generalized = generalized;
  if (classical || generalized) report.sections = obstruction_sweep(m, sweep);

  if (generalized) {
    report.verdict = Contextuality::Noncontextual;
    for (const auto& row : report.sections) {
      if (!row.generalized->trivial()) {
        report.verdict = Contextuality::Contextual;
        report.verdict_witness = section_name(m, row);
        break;
      }
    }
  }
  if (fraction) report.fraction = contextual_fraction(m, options.cutoff);

  if (options.oracle) {
    OracleCheck check;
    const Scenario& s = m.scenario();
    for (const auto& row : report.sections) {
      const JointEvent event = s.unrank(s.context(row.context), row.event);
      const bool extendable = extendability_oracle(m, row.context, event, options.cutoff).extendable;
      check.extendable.push_back(extendable);
      if (extendable != row.generalized->trivial()) check.mismatches.push_back(section_name(m, row));
    }
    const bool decomposable = noncontextual_decompose(m, options.cutoff).has_value();
    if (decomposable != (report.verdict == Contextuality::Noncontextual)) {
      check.mismatches.push_back("verdict vs noncontextual decomposition");
    }
    if (report.fraction && (report.fraction->value > 0) != (report.verdict == Contextuality::Contextual)) {
      check.mismatches.push_back("verdict vs contextual fraction");
    }
    report.oracle = std::move(check);
  }
  return report;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ModelDocument doc = parse_document(read_file(path));
    const EmpiricalModel m = build_model(doc);
    out << "valid: " << (doc.name.empty() ? path : doc.name) << " (" << m.semiring().name() << ", "
        << m.scenario().measurement_count() << " measurements, " << m.scenario().context_count() << " contexts)\n";
    const auto nd = is_nondisturbing(m);
    if (!nd) err << "warning: model is disturbing: " << describe(m.scenario(), *nd.witness) << "\n";
    return int{kOk};
  });
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ModelDocument doc = parse_document(read_file(options.path));
    EmpiricalModel m = build_model(doc);
    if (options.semiring) m = reinterpret(m, *options.semiring);
    const Report report = analyze_model(m, doc.name.empty() ? fs::path(options.path).stem().string() : doc.name,
                                        options);
    const std::string text = emit_report(m, report, options.format);
    if (options.out) {
      std::ofstream file(*options.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write '" + *options.out + "'");
      file << text;
    } else {
      out << text;
    }
    if (report.disturbance) return int{kDisturbing};
    if (report.oracle && !report.oracle->mismatches.empty()) {
      err << "oracle mismatch: " << report.oracle->mismatches.size() << " disagreement(s)\n";
      return int{kOracleMismatch};
    }
    return int{kOk};
  });
}

int cmd_corpus(const CorpusOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(options.dir)) {
      if (entry.path().extension() == ".model") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no .model files in '" + options.dir + "'");

    int failures = 0;
    bool oracle_failure = false;
    for (const auto& file : files) {
      const std::string stem = file.stem().string();
      const EmpiricalModel m = parse_model(read_file(file.string()));
      const fs::path expect_path = file.parent_path() / (stem + ".expect.json");
      if (options.write_expectations) {
        std::ofstream(expect_path, std::ios::binary) << expectations_for(m, stem, options.cutoff).dump(2) << "\n";
        out << "wrote " << expect_path.filename().string() << "\n";
        continue;
      }
      if (!fs::exists(expect_path)) {
        out << "FAIL " << stem << ": no expectations file\n";
        ++failures;
        continue;
      }
      const Json expected = Json::parse(read_file(expect_path.string()));
      AnalyzeOptions analyze;
      analyze.classical = true;
      analyze.generalized = true;
      analyze.fraction = is_nonneg_rational(m.semiring());
      analyze.oracle = true;
      analyze.cutoff = options.cutoff;
      const Report report = analyze_model(m, stem, analyze);
      const auto diffs = compare(m, report, expected);
      if (diffs.empty()) {
        out << "ok   " << stem << "\n";
      } else {
        ++failures;
        out << "FAIL " << stem << "\n";
        for (const auto& d : diffs) out << "       " << d << "\n";
      }
      oracle_failure = oracle_failure || (report.oracle && !report.oracle->mismatches.empty());
    }

    if (options.random > 0 && !options.write_expectations) {
      std::mt19937_64 rng(options.seed);
      const Scenario cycle = cycle_scenario(4);
      const Scenario triangle = cycle_scenario(3);
      std::size_t sections = 0;
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i < options.random; ++i) {
        const Scenario& s = i % 2 == 0 ? cycle : triangle;
        const SemiringSpec r = (i / 2) % 2 == 0 ? make_boolean() : make_nonneg_rational();
        const EmpiricalModel m = random_model(s, r, rng);
        for (int k = 0; k < s.context_count(); ++k) {
          for (const auto& event : s.events(s.context(k))) {
            if (!m.supported(k, s.rank(event))) continue;
            ++sections;
            const bool trivial = generalized_obstruction(m, k, event, options.cutoff).trivial();
            if (trivial != extendability_oracle(m, k, event, options.cutoff).extendable) {
              ++mismatches;
              out << "MISMATCH random model " << i << " section " << s.section_label(event) << "\n";
            }
          }
        }
      }
      out << "random: " << options.random << " models, " << sections << " sections, " << mismatches
          << " mismatches (seed " << options.seed << ")\n";
      oracle_failure = oracle_failure || mismatches > 0;
    }

    if (oracle_failure) return int{kOracleMismatch};
    return failures == 0 ? int{kOk} : int{kExpectationFailed};
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomological contextuality analysis over semirings"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check that a .model file parses and validates");
  validate->add_option("path", validate_path, "Model file")->required();

  AnalyzeOptions analyze;
  std::string format = "text";
  std::string basis = "events";
  auto* analyze_cmd = app.add_subcommand("analyze", "Run obstruction sweeps, verdicts and the contextual fraction");
  analyze_cmd->add_option("path", analyze.path, "Model file")->required();
  analyze_cmd->add_option("--semiring", analyze.semiring, "Reinterpret the tables over this semiring");
  analyze_cmd->add_flag("--classical", analyze.classical, "Classical ring-coefficient obstruction per section");
  analyze_cmd->add_flag("--generalized", analyze.generalized, "Generalized obstruction per section and verdict");
  analyze_cmd->add_flag("--fraction", analyze.fraction, "Contextual fraction (nonnegative rationals)");
  analyze_cmd->add_flag("--oracle", analyze.oracle, "Cross-check every verdict against brute force");
  analyze_cmd->add_option("--classical-ring", analyze.classical_ring, "integer or rational")
      ->check(CLI::IsMember({"integer", "rational"}));
  analyze_cmd->add_option("--classical-basis", basis, "events (all joint outcomes) or support")
      ->check(CLI::IsMember({"events", "support"}));
  analyze_cmd->add_option("--cutoff", analyze.cutoff, "Enumeration limit");
  analyze_cmd->add_option("--out", analyze.out, "Write the report here instead of stdout");
  analyze_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  CorpusOptions corpus;
  corpus.dir = SEMICECH_DEFAULT_CORPUS;
  auto* corpus_cmd = app.add_subcommand("corpus", "Check every corpus model against its expectations");
  corpus_cmd->add_option("--dir", corpus.dir, "Corpus directory");
  corpus_cmd->add_flag("--write-expectations", corpus.write_expectations,
                       "Regenerate expectations from the brute-force oracles");
  corpus_cmd->add_option("--random", corpus.random, "Also check this many seeded random models");
  corpus_cmd->add_option("--seed", corpus.seed, "Seed for --random");
  corpus_cmd->add_option("--cutoff", corpus.cutoff, "Enumeration limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kOk} : int{kUsage};
  }

  if (*validate) return cmd_validate(validate_path, out, err);
  if (*analyze_cmd) {
    analyze.format = format == "json" ? ReportFormat::Json : ReportFormat::Text;
    analyze.classical_basis = basis == "support" ? ClassicalBasis::Support : ClassicalBasis::FullEvents;
    return cmd_analyze(analyze, out, err);
  }
  return cmd_corpus(corpus, out, err);
}

}  // namespace semicech::cli
