#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "semicech/formats.hpp"
#include "semicech/model.hpp"

namespace semicech::testing {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::filesystem::path corpus_dir() { return SEMICECH_CORPUS; }

inline EmpiricalModel corpus_model(const std::string& stem) {
  return parse_model(read_file(corpus_dir() / (stem + ".model")));
}

inline std::vector<std::string> corpus_stems() {
  std::vector<std::string> stems;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
    if (entry.path().extension() == ".model") stems.push_back(entry.path().stem().string());
  }
  std::sort(stems.begin(), stems.end());
  return stems;
}

inline bool same_tables(const EmpiricalModel& a, const EmpiricalModel& b) {
  if (!(a.scenario() == b.scenario()) || a.semiring().name() != b.semiring().name()) return false;
  for (int k = 0; k < a.scenario().context_count(); ++k) {
    if (a.table(k) != b.table(k)) return false;
  }
  return true;
}

// Literal exhaustive search over subsets of global sections: the model is
// Boolean-noncontextual iff some nonempty subset S reproduces the support,
// i.e. an entry is 1 exactly when some member of S restricts to it.
inline bool boolean_subset_search(const EmpiricalModel& m) {
  const IncidenceMatrix inc = incidence_matrix(m.scenario());
  const std::size_t n = inc.columns.size();
  const std::vector<Element> p = model_vector(m);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t r = 0; r < inc.rows.size() && ok; ++r) {
      bool hit = false;
      for (std::size_t c = 0; c < n && !hit; ++c) hit = ((mask >> c) & 1u) && inc.entries[r][c];
      ok = hit == (p[r] != 0);
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace semicech::testing
