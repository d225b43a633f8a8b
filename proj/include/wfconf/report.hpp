#pragma once

// Text and JSON renderings of a ConformanceReport.

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "checker.hpp"
#include "formula.hpp"

namespace wfconf {

/// `[a, b, c]`
inline std::string bracketed(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + "]";
}

namespace report_detail {

inline void explain(std::ostream& os, const ConformanceReport& r, const ReferenceResult& ref,
                    const IncarnationResult& inc) {
  const std::string& c = r.concrete_model;
  const std::string& m = r.reference_model;
  bool definite = inc.status == Status::NotConform;
  os << "Result: Node [" << c << ":" << inc.concrete << "] " << (definite ? "does not" : "may not")
     << " conform to Node [" << m << ":" << ref.reference << "]\n";
  for (const auto* v : {&inc.forward, &inc.backward}) {
    std::string_view walk = v->direction == Direction::Forward ? "run" : "backtrack";
    switch (v->status) {
      case Status::Conform: break;
      case Status::NotConform:
        os << "Counter example: The following " << walk << " " << bracketed(v->witness) << " is possible in [" << c
           << "] but not in [" << m << "].\n";
        break;
      case Status::Unknown:
        os << "Counter example: The following " << walk << " " << bracketed(v->witness) << " is possible in [" << c
           << "] but may not be possible in [" << m << "].\n";
        break;
      case Status::NoCompletedPath:
        os << "No " << walk << " from [" << inc.concrete << "] completes in [" << c << "].\n";
        break;
    }
  }
}

}  // namespace report_detail

inline std::string render_text(const ConformanceReport& r) {
  std::ostringstream os;
  os << "Checking Conformance of [Concrete:" << r.concrete_model << "] to [Reference:" << r.reference_model << "]\n\n";
  os << "--- Final Result of Conformance Checking ---\n";
  auto failing = r.non_conforming();
  auto undecided = r.undecided();
  auto missing = r.missing();
  if (failing.empty() && undecided.empty() && missing.empty()) {
    os << "--- All nodes conform to their reference ---\n";
    return os.str();
  }
  if (!failing.empty()) os << "The following nodes do not conform: " << bracketed(failing) << "\n";
  if (!missing.empty()) os << "The following reference nodes have no incarnation: " << bracketed(missing) << "\n";
  if (!undecided.empty()) os << "The status of the following nodes is unknown: " << bracketed(undecided) << "\n";
  os << "\n-------- Explanations --------: \n";
  for (const auto& ref : r.nodes) {
    if (ref.missing) {
      os << "\nResult: Node [" << r.reference_model << ":" << ref.reference << "] has no incarnation in ["
         << r.concrete_model << "] under mapping \"" << r.mapping << "\"\n";
      continue;
    }
    for (const auto& inc : ref.incarnations) {
      if (inc.status == Status::Conform) continue;
      os << "\n";
      report_detail::explain(os, r, ref, inc);
    }
  }
  return os.str();
}

/// 0 conform, 1 not conform, 2 unknown or no completed path.
inline int exit_code(const ConformanceReport& r) {
  switch (r.overall) {
    case Status::Conform: return 0;
    case Status::NotConform: return 1;
    case Status::Unknown:
    case Status::NoCompletedPath: return 2;
  }
  return 2;
}

namespace report_detail {

using nlohmann::json;

inline std::string_view kind_key(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::Var: return "var";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Xor: return "xor";
    case Formula::Kind::Or: return "or";
  }
  return "?";
}

inline json formula_json(const Formula& f) {
  json j = {{"kind", kind_key(f.kind())}};
  if (f.kind() == Formula::Kind::Var) j["name"] = f.name();
  if (!f.operands().empty()) {
    j["operands"] = json::array();
    for (const auto& op : f.operands()) j["operands"].push_back(formula_json(op));
  }
  return j;
}

inline Formula formula_from(const json& j) {
  auto k = j.at("kind").get<std::string>();
  if (k == "true") return Formula::truth();
  if (k == "var") return Formula::var(j.at("name").get<std::string>());
  std::vector<Formula> ops;
  for (const auto& op : j.at("operands")) ops.push_back(formula_from(op));
  if (k == "and") return Formula::conj(std::move(ops));
  if (k == "xor") return Formula::excl(std::move(ops));
  if (k == "or") return Formula::incl(std::move(ops));
  throw std::invalid_argument("unknown formula kind '" + k + "'");
}

inline Status status_from(std::string_view s) {
  for (Status st : {Status::NotConform, Status::Conform, Status::Unknown, Status::NoCompletedPath})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

inline json verdict_json(const IncarnationVerdict& v) {
  return {{"concrete", v.concrete},
          {"reference", v.reference},
          {"direction", to_string(v.direction)},
          {"status", to_string(v.status)},
          {"witness", v.witness},
          {"vacuous", v.vacuous}};
}

inline IncarnationVerdict verdict_from(const json& j) {
  IncarnationVerdict v;
  v.concrete = j.at("concrete").get<std::string>();
  v.reference = j.at("reference").get<std::string>();
  auto d = j.at("direction").get<std::string>();
  if (d != "forward" && d != "backward") throw std::invalid_argument("unknown direction '" + d + "'");
  v.direction = d == "forward" ? Direction::Forward : Direction::Backward;
  v.status = status_from(j.at("status").get<std::string>());
  v.witness = j.at("witness").get<std::vector<std::string>>();
  v.vacuous = j.at("vacuous").get<bool>();
  return v;
}

}  // namespace report_detail

inline nlohmann::json report_json(const ConformanceReport& r) {
  using namespace report_detail;
  json nodes = json::array();
  for (const auto& ref : r.nodes) {
    json incs = json::array();
    for (const auto& i : ref.incarnations)
      incs.push_back({{"concrete", i.concrete},
                      {"status", to_string(i.status)},
                      {"forward", verdict_json(i.forward)},
                      {"backward", verdict_json(i.backward)}});
    nodes.push_back({{"reference", ref.reference},
                     {"missing", ref.missing},
                     {"predecessor", formula_json(ref.predecessor)},
                     {"predecessorText", ref.predecessor.to_string()},
                     {"successor", formula_json(ref.successor)},
                     {"successorText", ref.successor.to_string()},
                     {"incarnations", incs}});
  }
  return {{"concrete", r.concrete_model}, {"reference", r.reference_model}, {"mapping", r.mapping},
          {"overall", to_string(r.overall)}, {"warnings", r.warnings},   {"nodes", nodes}};
}

inline std::string render_json(const ConformanceReport& r) { return report_json(r).dump(2) + "\n"; }

/// Inverse of render_json. Throws nlohmann::json::exception or
/// std::invalid_argument on malformed input.
inline ConformanceReport report_from_json(std::string_view text) {
  using namespace report_detail;
  json j = json::parse(text);
  ConformanceReport r;
  r.concrete_model = j.at("concrete").get<std::string>();
  r.reference_model = j.at("reference").get<std::string>();
  r.mapping = j.at("mapping").get<std::string>();
  r.overall = status_from(j.at("overall").get<std::string>());
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& n : j.at("nodes")) {
    ReferenceResult ref;
    ref.reference = n.at("reference").get<std::string>();
    ref.missing = n.at("missing").get<bool>();
    ref.predecessor = formula_from(n.at("predecessor"));
    ref.successor = formula_from(n.at("successor"));
    for (const auto& i : n.at("incarnations")) {
      IncarnationResult inc;
      inc.concrete = i.at("concrete").get<std::string>();
      inc.status = status_from(i.at("status").get<std::string>());
      inc.forward = verdict_from(i.at("forward"));
      inc.backward = verdict_from(i.at("backward"));
      ref.incarnations.push_back(std::move(inc));
    }
    r.nodes.push_back(std::move(ref));
  }
  return r;
}

}  // namespace wfconf
