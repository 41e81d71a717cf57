#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semicech/cli.hpp"
#include "support.hpp"

using namespace semicech;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "semicech");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& stem) { return (testing::corpus_dir() / (stem + ".model")).string(); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "semicech_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate") {
  for (const auto& stem : testing::corpus_stems()) CHECK(run({"validate", corpus(stem)}).code == cli::kOk);
  const auto disturbing = run({"validate", corpus("disturbing")});
  CHECK(disturbing.code == cli::kOk);
  CHECK(disturbing.err.find("warning") != std::string::npos);

  const auto truncated = scratch("truncated.model");
  std::ofstream(truncated) << testing::read_file(corpus("prbox")).substr(0, 100);
  CHECK(run({"validate", truncated.string()}).code == cli::kSyntax);

  const auto bad = scratch("bad.model");
  std::string text = testing::read_file(corpus("prbox"));
  text.replace(text.find("\"1/2\""), 5, "\"1/3\"");
  std::ofstream(bad) << text;
  const auto semantic = run({"validate", bad.string()});
  CHECK(semantic.code == cli::kSemantic);
  CHECK(semantic.err.find("/tables/0") != std::string::npos);

  CHECK(run({"validate", scratch("missing.model").string()}).code == cli::kSyntax);
}

TEST_CASE("analyze table1 shows the classical/generalized divergence") {
  const auto r = run({"analyze", corpus("table1"), "--classical", "--generalized"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("(ad)->(01) 1       trivial            nontrivial") != std::string::npos);
  CHECK(r.out.find("verdict: contextual") != std::string::npos);
}

TEST_CASE("analyze fractions and oracle") {
  const auto pr = run({"analyze", corpus("prbox"), "--fraction"});
  CHECK(pr.code == cli::kOk);
  CHECK(pr.out.find("contextual fraction: 1 ") != std::string::npos);
  const auto det = run({"analyze", corpus("deterministic"), "--oracle"});
  CHECK(det.code == cli::kOk);
  CHECK(det.out.find("0 mismatches") != std::string::npos);
}

TEST_CASE("analyze exit codes and output file") {
  CHECK(run({"analyze", corpus("disturbing")}).code == cli::kDisturbing);
  CHECK(run({"analyze", corpus("prbox"), "--cutoff", "4"}).code == cli::kTooLarge);
  CHECK(run({"analyze"}).code == cli::kUsage);
  CHECK(run({"analyze", corpus("prbox"), "--format", "xml"}).code == cli::kUsage);
  const auto out = scratch("report.json");
  CHECK(run({"analyze", corpus("hardy"), "--format", "json", "--out", out.string()}).code == cli::kOk);
  const auto json = nlohmann::json::parse(testing::read_file(out));
  CHECK(json["verdict"] == "contextual");
}

TEST_CASE("semiring reinterpretation") {
  const auto r = run({"analyze", corpus("prbox"), "--semiring", "boolean", "--generalized"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("semiring: boolean") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = run({"analyze", corpus("pr_deterministic"), "--format", "json"});
  const auto b = run({"analyze", corpus("pr_deterministic"), "--format", "json"});
  CHECK(a.out == b.out);
}

TEST_CASE("corpus run and corrupted expectations") {
  CHECK(run({"corpus", "--dir", testing::corpus_dir().string()}).code == cli::kOk);

  const fs::path dir = scratch("corpus");
  fs::create_directories(dir);
  fs::copy_file(corpus("prbox"), dir / "prbox.model", fs::copy_options::overwrite_existing);
  auto expect = nlohmann::json::parse(testing::read_file(testing::corpus_dir() / "prbox.expect.json"));
  expect["contextual_fraction"] = "1/2";
  expect["sections"]["(ab)->(00)"]["generalized"] = "trivial";
  std::ofstream(dir / "prbox.expect.json") << expect.dump(2);
  const auto r = run({"corpus", "--dir", dir.string()});
  CHECK(r.code == cli::kExpectationFailed);
  CHECK(r.out.find("contextual fraction") != std::string::npos);
  CHECK(r.out.find("(ab)->(00)") != std::string::npos);
}

TEST_CASE("seeded random sweep is reproducible") {
  const auto a = run({"corpus", "--dir", testing::corpus_dir().string(), "--random", "10", "--seed", "5"});
  const auto b = run({"corpus", "--dir", testing::corpus_dir().string(), "--random", "10", "--seed", "5"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("0 mismatches (seed 5)") != std::string::npos);
}

}
