#pragma once

// Local causal dependencies of a reference task or event, encoded as
// propositional formulas over task/event names.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "model.hpp"

namespace wfconf {

class Formula {
 public:
  enum class Kind {
    True,      // no neighbours in this direction
    Var,
    And,
    Xor,       // exactly one operand holds
    Or,
  };

  Formula() = default;

  static Formula truth() { return Formula{}; }

  static Formula var(std::string name) {
    Formula f;
    f.kind_ = Kind::Var;
    f.name_ = std::move(name);
    return f;
  }

  static Formula conj(std::vector<Formula> ops) { return connective(Kind::And, std::move(ops)); }
  static Formula excl(std::vector<Formula> ops) { return connective(Kind::Xor, std::move(ops)); }
  static Formula incl(std::vector<Formula> ops) { return connective(Kind::Or, std::move(ops)); }

  /// Single-operand connectives collapse to their operand.
  static Formula connective(Kind kind, std::vector<Formula> ops) {
    if (kind == Kind::True || kind == Kind::Var) throw std::invalid_argument("not a connective");
    if (ops.empty()) throw std::invalid_argument("connective needs at least one operand");
    if (ops.size() == 1) return std::move(ops.front());
    Formula f;
    f.kind_ = kind;
    f.operands_ = std::move(ops);
    return f;
  }

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  const std::string& name() const { return name_; }
  const std::vector<Formula>& operands() const { return operands_; }

  /// Variable names, sorted and unique.
  std::set<std::string> variables() const {
    std::set<std::string> out;
    collect(out);
    return out;
  }

  /// Operands sorted recursively; equal formulas share one canonical form.
  Formula canonical() const {
    Formula f = *this;
    for (auto& op : f.operands_) op = op.canonical();
    std::sort(f.operands_.begin(), f.operands_.end(),
              [](const Formula& a, const Formula& b) { return a.key() < b.key(); });
    return f;
  }

  /// Infix rendering: `(Introduction AND Main AND Conclusion) XOR Done`.
  std::string to_string() const {
    switch (kind_) {
      case Kind::True: return "TRUE";
      case Kind::Var: return name_;
      default: break;
    }
    std::string sep = kind_ == Kind::And ? " AND " : kind_ == Kind::Xor ? " XOR " : " OR ";
    std::string out;
    for (std::size_t i = 0; i < operands_.size(); ++i) {
      if (i) out += sep;
      const auto& op = operands_[i];
      bool compound = op.kind_ != Kind::Var && op.kind_ != Kind::True;
      out += compound ? "(" + op.to_string() + ")" : op.to_string();
    }
    return out;
  }

  /// Operand order is irrelevant to equality.
  friend bool operator==(const Formula& a, const Formula& b) { return a.canonical().key() == b.canonical().key(); }

 private:
  void collect(std::set<std::string>& out) const {
    if (kind_ == Kind::Var) out.insert(name_);
    for (const auto& op : operands_) op.collect(out);
  }

  // Unambiguous serialisation used for ordering and comparison.
  std::string key() const {
    switch (kind_) {
      case Kind::True: return "T";
      case Kind::Var: return "v" + std::to_string(name_.size()) + ":" + name_;
      default: break;
    }
    std::string out = kind_ == Kind::And ? "&(" : kind_ == Kind::Xor ? "^(" : "|(";
    for (const auto& op : operands_) out += op.key() + ",";
    return out + ")";
  }

  Kind kind_ = Kind::True;
  std::string name_;
  std::vector<Formula> operands_;
};

/// Evaluates `f` with `holds(name)` deciding each variable.
template <typename Pred>
  requires std::predicate<Pred&, std::string_view>
bool evaluate(const Formula& f, Pred&& holds) {
  switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::Var: return static_cast<bool>(holds(std::string_view(f.name())));
    case Formula::Kind::And:
      return std::all_of(f.operands().begin(), f.operands().end(),
                         [&](const Formula& op) { return evaluate(op, holds); });
    case Formula::Kind::Or:
      return std::any_of(f.operands().begin(), f.operands().end(),
                         [&](const Formula& op) { return evaluate(op, holds); });
    case Formula::Kind::Xor: {
      std::size_t n = 0;
      for (const auto& op : f.operands())
        if (evaluate(op, holds) && ++n > 1) return false;
      return n == 1;
    }
  }
  return false;
}

inline bool evaluate(const Formula& f, const std::set<std::string, std::less<>>& true_vars) {
  return evaluate(f, [&](std::string_view v) { return true_vars.find(v) != true_vars.end(); });
}

class CycleError : public std::runtime_error {
 public:
  CycleError(const std::string& model, const std::string& gateway)
      : std::runtime_error("gateway-only cycle through '" + gateway + "' in model '" + model + "'"),
        gateway_(gateway) {}
  const std::string& gateway() const { return gateway_; }

 private:
  std::string gateway_;
};

namespace formula_detail {

enum class Way { Forward, Backward };

// Depth-first descent until the first task or event on every branch.
// Forward descent branches at splits and passes through merges; backward
// descent branches at merges (XOR-merges count as inclusive) and passes
// through splits.
inline Formula descend(const ProcessModel& m, NodeId x, Way way, std::vector<bool>& on_path) {
  const Node& node = m.node(x);
  if (node.is_activity()) return Formula::var(node.name);
  if (on_path[x]) throw CycleError(m.name(), node.name);
  on_path[x] = true;

  const auto& next = way == Way::Forward ? m.successor_ids(x) : m.predecessor_ids(x);
  bool branches = way == Way::Forward ? node.is_split() : node.is_merge();

  Formula out;
  if (next.empty()) {
    out = Formula::truth();
  } else if (!branches) {
    out = descend(m, next.front(), way, on_path);
  } else {
    std::vector<Formula> ops;
    ops.reserve(next.size());
    for (auto s : next) ops.push_back(descend(m, s, way, on_path));
    Formula::Kind k = Formula::Kind::Or;
    if (node.logic == GatewayLogic::And) k = Formula::Kind::And;
    else if (node.logic == GatewayLogic::Xor && way == Way::Forward) k = Formula::Kind::Xor;
    out = Formula::connective(k, std::move(ops));
  }
  on_path[x] = false;
  return out;
}

inline Formula build(const ProcessModel& m, std::string_view name, Way way) {
  NodeId n = m.id(name);
  if (!m.node(n).is_activity())
    throw std::invalid_argument("'" + std::string(name) + "' is a gateway; formulas exist for tasks and events only");
  const auto& first = way == Way::Forward ? m.successor_ids(n) : m.predecessor_ids(n);
  if (first.empty()) return Formula::truth();
  std::vector<bool> on_path(m.size(), false);
  std::vector<Formula> ops;
  for (auto s : first) ops.push_back(descend(m, s, way, on_path));
  return Formula::conj(std::move(ops));
}

}  // namespace formula_detail

/// Formula over the direct successor tasks/events of `node` in `reference`.
inline Formula successor_formula(const ProcessModel& reference, std::string_view node) {
  return formula_detail::build(reference, node, formula_detail::Way::Forward);
}

/// Formula over the direct predecessor tasks/events of `node` in `reference`.
inline Formula predecessor_formula(const ProcessModel& reference, std::string_view node) {
  return formula_detail::build(reference, node, formula_detail::Way::Backward);
}

}  // namespace wfconf
