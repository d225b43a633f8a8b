#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "model.hpp"

namespace wfconf {

enum class DiagnosticCode {
  DuplicateName,
  DanglingFlow,
  SelfLoop,
  MissingStart,
  MissingEnd,
  Degree,
  EmptyStereotype,
};

struct Diagnostic {
  DiagnosticCode code;
  std::optional<std::string> node;       // node locus
  std::optional<std::size_t> flow;       // index into ProcessModel::flows()
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

namespace detail {

inline std::string degree_rule(const Node& n) {
  switch (n.kind) {
    case NodeKind::Task: return "a task needs exactly 1 incoming and 1 outgoing flow";
    case NodeKind::StartEvent: return "a start event needs 0 incoming and exactly 1 outgoing flow";
    case NodeKind::EndEvent: return "an end event needs exactly 1 incoming and 0 outgoing flows";
    case NodeKind::Gateway:
      return n.role == GatewayRole::Split
                 ? "a split gateway needs exactly 1 incoming and at least 2 outgoing flows"
                 : "a merge gateway needs at least 2 incoming and exactly 1 outgoing flow";
  }
  return {};
}

inline bool degree_ok(const Node& n, std::size_t in, std::size_t out) {
  switch (n.kind) {
    case NodeKind::Task: return in == 1 && out == 1;
    case NodeKind::StartEvent: return in == 0 && out == 1;
    case NodeKind::EndEvent: return in == 1 && out == 0;
    case NodeKind::Gateway:
      return n.role == GatewayRole::Split ? (in == 1 && out >= 2) : (in >= 2 && out == 1);
  }
  return false;
}

}  // namespace detail

/// Structural checks. An empty result means the model satisfies every
/// assumption the formula builder and the checker rely on.
inline std::vector<Diagnostic> validate(const ProcessModel& model) {
  std::vector<Diagnostic> out;
  const auto& nodes = model.nodes();

  std::set<std::string> seen;
  for (const auto& n : nodes) {
    if (!seen.insert(n.name).second)
      out.push_back({DiagnosticCode::DuplicateName, n.name, std::nullopt,
                     "duplicate node name '" + n.name + "'"});
    for (const auto& st : n.stereotypes)
      if (st.mapping.empty() || st.reference.empty())
        out.push_back({DiagnosticCode::EmptyStereotype, n.name, std::nullopt,
                       "empty stereotype on '" + n.name + "'"});
  }

  std::vector<std::size_t> in(nodes.size(), 0), out_deg(nodes.size(), 0);
  for (std::size_t i = 0; i < model.flows().size(); ++i) {
    const auto& f = model.flows()[i];
    auto s = model.find(f.source);
    auto t = model.find(f.target);
    if (!s)
      out.push_back({DiagnosticCode::DanglingFlow, std::nullopt, i,
                     "flow source '" + f.source + "' is not declared"});
    if (!t)
      out.push_back({DiagnosticCode::DanglingFlow, std::nullopt, i,
                     "flow target '" + f.target + "' is not declared"});
    if (f.source == f.target)
      out.push_back({DiagnosticCode::SelfLoop, f.source, i, "self-loop on '" + f.source + "'"});
    if (s) ++out_deg[*s];
    if (t) ++in[*t];
  }

  bool has_start = false, has_end = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    has_start |= n.kind == NodeKind::StartEvent;
    has_end |= n.kind == NodeKind::EndEvent;
    // duplicates share one index entry; their degrees are meaningless
    if (model.find(n.name) != i) continue;
    if (!detail::degree_ok(n, in[i], out_deg[i]))
      out.push_back({DiagnosticCode::Degree, n.name, std::nullopt,
                     "'" + n.name + "' has " + std::to_string(in[i]) + " incoming and " +
                         std::to_string(out_deg[i]) + " outgoing flows; " + detail::degree_rule(n)});
  }
  if (!has_start) out.push_back({DiagnosticCode::MissingStart, std::nullopt, std::nullopt, "no start event"});
  if (!has_end) out.push_back({DiagnosticCode::MissingEnd, std::nullopt, std::nullopt, "no end event"});
  return out;
}

class InvalidModelError : public std::runtime_error {
 public:
  InvalidModelError(const std::string& model, std::vector<Diagnostic> diagnostics)
      : std::runtime_error(compose(model, diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string compose(const std::string& model, const std::vector<Diagnostic>& d) {
    std::string msg = "model '" + model + "' is invalid";
    for (const auto& x : d) msg += "\n  " + x.message;
    return msg;
  }
  std::vector<Diagnostic> diagnostics_;
};

inline void require_valid(const ProcessModel& model) {
  if (auto d = validate(model); !d.empty()) throw InvalidModelError(model.name(), std::move(d));
}

}  // namespace wfconf
