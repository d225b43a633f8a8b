#pragma once

// In-memory process models: tasks, start/end events and split/merge gateways
// connected by sequence flows. Models are immutable once constructed.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wfconf {

enum class NodeKind { Task, StartEvent, EndEvent, Gateway };
enum class GatewayLogic { And, Xor, Or };
enum class GatewayRole { Split, Merge };

inline std::string_view to_string(GatewayLogic logic) {
  switch (logic) {
    case GatewayLogic::And: return "and";
    case GatewayLogic::Xor: return "xor";
    case GatewayLogic::Or: return "or";
  }
  return "?";
}

inline std::string_view to_string(GatewayRole role) {
  return role == GatewayRole::Split ? "split" : "merge";
}

/// Incarnation annotation `<<mapping="Reference">>`.
struct Stereotype {
  std::string mapping;
  std::string reference;

  friend bool operator==(const Stereotype&, const Stereotype&) = default;
  friend auto operator<=>(const Stereotype&, const Stereotype&) = default;
};

struct Node {
  std::string name;
  NodeKind kind = NodeKind::Task;
  // Only meaningful for gateways.
  GatewayLogic logic = GatewayLogic::And;
  GatewayRole role = GatewayRole::Split;
  std::vector<Stereotype> stereotypes;

  static Node task(std::string name, std::vector<Stereotype> st = {}) {
    return Node{std::move(name), NodeKind::Task, GatewayLogic::And, GatewayRole::Split, std::move(st)};
  }
  static Node start(std::string name, std::vector<Stereotype> st = {}) {
    return Node{std::move(name), NodeKind::StartEvent, GatewayLogic::And, GatewayRole::Split, std::move(st)};
  }
  static Node end(std::string name, std::vector<Stereotype> st = {}) {
    return Node{std::move(name), NodeKind::EndEvent, GatewayLogic::And, GatewayRole::Split, std::move(st)};
  }
  static Node gateway(std::string name, GatewayLogic logic, GatewayRole role) {
    return Node{std::move(name), NodeKind::Gateway, logic, role, {}};
  }

  bool is_gateway() const { return kind == NodeKind::Gateway; }
  bool is_event() const { return kind == NodeKind::StartEvent || kind == NodeKind::EndEvent; }
  /// Tasks and events are the elements that carry causal dependencies.
  bool is_activity() const { return !is_gateway(); }
  bool is(GatewayLogic l, GatewayRole r) const { return is_gateway() && logic == l && role == r; }
  bool is_split() const { return is_gateway() && role == GatewayRole::Split; }
  bool is_merge() const { return is_gateway() && role == GatewayRole::Merge; }

  /// Stereotype value for `mapping`, if any (first one wins).
  std::optional<std::string> stereotype(std::string_view mapping) const {
    for (const auto& s : stereotypes)
      if (s.mapping == mapping) return s.reference;
    return std::nullopt;
  }

  friend bool operator==(const Node&, const Node&) = default;
};

struct SequenceFlow {
  std::string source;
  std::string target;

  friend bool operator==(const SequenceFlow&, const SequenceFlow&) = default;
  friend auto operator<=>(const SequenceFlow&, const SequenceFlow&) = default;
};

using NodeId = std::size_t;

class UnknownNodeError : public std::out_of_range {
 public:
  explicit UnknownNodeError(const std::string& name) : std::out_of_range("unknown node '" + name + "'") {}
};

class ProcessModel {
 public:
  ProcessModel() = default;

  ProcessModel(std::string name, std::vector<Node> nodes, std::vector<SequenceFlow> flows)
      : name_(std::move(name)), nodes_(std::move(nodes)), flows_(std::move(flows)) {
    index_.reserve(nodes_.size());
    for (NodeId i = 0; i < nodes_.size(); ++i) index_.try_emplace(nodes_[i].name, i);
    succ_.resize(nodes_.size());
    pred_.resize(nodes_.size());
    for (const auto& f : flows_) {
      auto s = find(f.source);
      auto t = find(f.target);
      // dangling endpoints are kept in flows() and reported by validate()
      if (!s || !t) continue;
      succ_[*s].push_back(*t);
      pred_[*t].push_back(*s);
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<SequenceFlow>& flows() const { return flows_; }
  std::size_t size() const { return nodes_.size(); }

  const Node& node(NodeId id) const { return nodes_.at(id); }

  std::optional<NodeId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId id(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw UnknownNodeError(std::string(name));
  }

  const Node& node(std::string_view name) const { return nodes_[id(name)]; }

  /// Targets of outgoing flows, in flow declaration order.
  const std::vector<NodeId>& successor_ids(NodeId id) const { return succ_.at(id); }
  /// Sources of incoming flows, in flow declaration order.
  const std::vector<NodeId>& predecessor_ids(NodeId id) const { return pred_.at(id); }

  std::vector<Node> successors(std::string_view name) const { return collect(succ_[id(name)]); }
  std::vector<Node> predecessors(std::string_view name) const { return collect(pred_[id(name)]); }

  friend bool operator==(const ProcessModel& a, const ProcessModel& b) {
    return std::tie(a.name_, a.nodes_, a.flows_) == std::tie(b.name_, b.nodes_, b.flows_);
  }

 private:
  std::vector<Node> collect(const std::vector<NodeId>& ids) const {
    std::vector<Node> out;
    out.reserve(ids.size());
    for (auto i : ids) out.push_back(nodes_[i]);
    return out;
  }

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<SequenceFlow> flows_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<NodeId>> succ_;
  std::vector<std::vector<NodeId>> pred_;
};

/// Equality up to declaration order: same name, node set, flow multiset and
/// stereotypes.
inline bool structurally_equal(const ProcessModel& a, const ProcessModel& b) {
  if (a.name() != b.name()) return false;
  auto sorted_nodes = [](const ProcessModel& m) {
    auto v = m.nodes();
    for (auto& n : v) std::sort(n.stereotypes.begin(), n.stereotypes.end());
    std::sort(v.begin(), v.end(), [](const Node& x, const Node& y) { return x.name < y.name; });
    return v;
  };
  auto sorted_flows = [](const ProcessModel& m) {
    auto v = m.flows();
    std::sort(v.begin(), v.end());
    return v;
  };
  return sorted_nodes(a) == sorted_nodes(b) && sorted_flows(a) == sorted_flows(b);
}

}  // namespace wfconf
