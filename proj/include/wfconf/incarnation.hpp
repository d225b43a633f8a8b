#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "model.hpp"

namespace wfconf {

class MappingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relation from concrete tasks/events to the reference tasks/events they
/// incarnate under one named mapping.
struct IncarnationMap {
  std::string mapping;
  // (concrete, reference), in concrete declaration order
  std::vector<std::pair<std::string, std::string>> pairs;
  // reference tasks/events without any incarnation, in reference declaration order
  std::vector<std::string> unincarnated;
  // e.g. a start event incarnating a task
  std::vector<std::string> warnings;

  std::optional<std::string> reference_of(std::string_view concrete) const {
    for (const auto& [c, r] : pairs)
      if (c == concrete) return r;
    return std::nullopt;
  }

  std::vector<std::string> incarnations_of(std::string_view reference) const {
    std::vector<std::string> out;
    for (const auto& [c, r] : pairs)
      if (r == reference) out.push_back(c);
    return out;
  }

  friend bool operator==(const IncarnationMap&, const IncarnationMap&) = default;
};

namespace incarnation_detail {

inline std::string_view kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Task: return "task";
    case NodeKind::StartEvent: return "start event";
    case NodeKind::EndEvent: return "end event";
    case NodeKind::Gateway: return "gateway";
  }
  return "?";
}

}  // namespace incarnation_detail

/// Resolves stereotypes `<<mapping="R">>` on concrete tasks and events. Any
/// reference task/event left without an explicit incarnation falls back to a
/// concrete node of the same name and kind, unless that node is itself
/// stereotyped under `mapping`.
inline IncarnationMap resolve_mapping(const ProcessModel& reference, const ProcessModel& concrete,
                                      const std::string& mapping) {
  using incarnation_detail::kind_name;
  IncarnationMap map;
  map.mapping = mapping;

  std::map<std::string, std::string> explicit_pairs;  // concrete -> reference
  std::set<std::string> explicitly_incarnated;
  for (const auto& c : concrete.nodes()) {
    std::optional<std::string> target;
    for (const auto& st : c.stereotypes) {
      if (st.mapping != mapping) continue;
      if (target)
        throw MappingError("'" + c.name + "' carries more than one stereotype for mapping '" + mapping + "'");
      target = st.reference;
    }
    if (!target) continue;
    if (c.is_gateway()) throw MappingError("gateway '" + c.name + "' cannot be an incarnation");
    auto r = reference.find(*target);
    if (!r)
      throw MappingError("'" + c.name + "' incarnates '" + *target + "', which does not exist in reference model '" +
                         reference.name() + "'");
    const Node& ref = reference.node(*r);
    if (ref.is_gateway())
      throw MappingError("'" + c.name + "' incarnates gateway '" + *target + "'; only tasks and events have incarnations");
    if (ref.kind != c.kind)
      map.warnings.push_back("'" + c.name + "' (" + std::string(kind_name(c.kind)) + ") incarnates '" + ref.name +
                             "' (" + std::string(kind_name(ref.kind)) + ")");
    explicit_pairs.emplace(c.name, *target);
    explicitly_incarnated.insert(*target);
  }

  std::map<std::string, std::string> fallback_pairs;
  std::set<std::string> covered = explicitly_incarnated;
  for (const auto& r : reference.nodes()) {
    if (!r.is_activity() || explicitly_incarnated.count(r.name)) continue;
    auto c = concrete.find(r.name);
    if (c && !explicit_pairs.count(r.name) && concrete.node(*c).kind == r.kind) {
      fallback_pairs.emplace(r.name, r.name);
      covered.insert(r.name);
    }
  }

  for (const auto& c : concrete.nodes()) {
    if (auto it = explicit_pairs.find(c.name); it != explicit_pairs.end())
      map.pairs.emplace_back(c.name, it->second);
    else if (auto jt = fallback_pairs.find(c.name); jt != fallback_pairs.end())
      map.pairs.emplace_back(c.name, jt->second);
  }
  for (const auto& r : reference.nodes())
    if (r.is_activity() && !covered.count(r.name)) map.unincarnated.push_back(r.name);
  return map;
}

/// Every task and event incarnates itself; used for self-comparison.
inline IncarnationMap identity_mapping(const ProcessModel& model) {
  IncarnationMap map;
  map.mapping = "";
  for (const auto& n : model.nodes())
    if (n.is_activity()) map.pairs.emplace_back(n.name, n.name);
  return map;
}

}  // namespace wfconf
