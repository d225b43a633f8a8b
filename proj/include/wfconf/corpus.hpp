#pragma once

// Fixture manifest: one `[case NAME]` section per model pair.
//
//   [case C1]
//   description = sequentializing parallel tasks
//   concrete    = c01_sequential.wfm
//   reference   = PaperAuthoring.wfm
//   mapping     = ref
//   expect      = conform            (conform | not-conform | unknown | no-completed-path)
//   expectNodes = Review, Main       (optional; non-conform or unknown incarnations)
//
// Paths are relative to the manifest. `#` starts a comment line.

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "checker.hpp"
#include "text.hpp"

namespace wfconf {

struct CorpusCase {
  std::string name;
  std::string description;
  std::filesystem::path concrete;
  std::filesystem::path reference;
  std::string mapping;
  Status expect = Status::Conform;
  std::vector<std::string> expect_nodes;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace corpus_detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i <= s.size()) {
    auto j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    if (auto item = trim(s.substr(i, j - i)); !item.empty()) out.push_back(item);
    i = j + 1;
  }
  return out;
}

inline Status parse_status(const std::string& s, const std::string& where) {
  for (Status st : {Status::NotConform, Status::Conform, Status::Unknown, Status::NoCompletedPath})
    if (to_string(st) == s) return st;
  throw CorpusError(where + ": unknown expectation '" + s + "'");
}

}  // namespace corpus_detail

/// Reads `manifest` and checks that every referenced model file exists.
inline std::vector<CorpusCase> load_corpus(const std::filesystem::path& manifest) {
  using namespace corpus_detail;
  std::ifstream in(manifest);
  if (!in) throw CorpusError("cannot open manifest '" + manifest.string() + "'");
  auto dir = manifest.parent_path();

  std::vector<CorpusCase> cases;
  std::string line;
  std::size_t lineno = 0;
  auto finish = [&] {
    if (cases.empty()) return;
    const auto& c = cases.back();
    std::string where = manifest.string() + ": case " + c.name;
    if (c.concrete.empty() || c.reference.empty() || c.mapping.empty())
      throw CorpusError(where + " needs concrete, reference and mapping");
    for (const auto& p : {c.concrete, c.reference})
      if (!std::filesystem::exists(p)) throw CorpusError(where + ": missing file '" + p.string() + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = manifest.string() + ":" + std::to_string(lineno);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.rfind("[case ", 0) != 0) throw CorpusError(where + ": expected '[case NAME]'");
      finish();
      cases.push_back({});
      cases.back().name = trim(line.substr(6, line.size() - 7));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw CorpusError(where + ": expected 'key = value'");
    if (cases.empty()) throw CorpusError(where + ": field outside a case");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    auto& c = cases.back();
    if (key == "name") c.name = value;
    else if (key == "description") c.description = value;
    else if (key == "concrete") c.concrete = dir / value;
    else if (key == "reference") c.reference = dir / value;
    else if (key == "mapping") c.mapping = value;
    else if (key == "expect") c.expect = parse_status(value, where);
    else if (key == "expectNodes") c.expect_nodes = split_list(value);
    else throw CorpusError(where + ": unknown field '" + key + "'");
  }
  finish();
  return cases;
}

/// Parses a model file, turning parse errors into a CorpusError.
inline ProcessModel load_model(const std::filesystem::path& path) {
  auto r = parse_file(path.string());
  if (!r) {
    std::string msg = path.string() + ":";
    for (const auto& e : r.errors) msg += "\n  " + e.to_string();
    throw CorpusError(msg);
  }
  return std::move(*r.model);
}

}  // namespace wfconf
