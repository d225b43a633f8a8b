#pragma once

// Branch-based quasi-simulation of a concrete model around one incarnation.
//
// Each branch keeps a set of visited nodes N, an ordered set of active nodes A,
// a status and the trace of tasks/events it has passed. Branches advance in
// lock-step; exclusive and inclusive choices fork new branches. A branch's
// status only ever moves NotConform -> Conform -> Unknown: it becomes Conform
// the first time the reference projection of N satisfies the formula and
// Unknown if a later step breaks the formula again.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formula.hpp"
#include "incarnation.hpp"
#include "model.hpp"
#include "validate.hpp"

namespace wfconf {

enum class Direction { Forward, Backward };

enum class Status { NotConform, Conform, Unknown, NoCompletedPath };

inline std::string_view to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::NotConform: return "not-conform";
    case Status::Conform: return "conform";
    case Status::Unknown: return "unknown";
    case Status::NoCompletedPath: return "no-completed-path";
  }
  return "?";
}

/// Outcome of one direction of the search for one incarnation.
struct IncarnationVerdict {
  std::string concrete;
  std::string reference;
  Direction direction = Direction::Forward;
  Status status = Status::Conform;
  std::vector<std::string> witness;  // concrete tasks/events, in visiting order
  bool vacuous = false;              // the reference element has no neighbours this way

  friend bool operator==(const IncarnationVerdict&, const IncarnationVerdict&) = default;
};

/// Instrumentation collected across searches.
struct SearchStats {
  std::size_t searches = 0;
  std::size_t branches_created = 0;  // includes each search's initial branch
  std::size_t branches_deleted = 0;
  std::size_t branches_completed = 0;
  std::size_t iterations = 0;
  // largest number of branches forked at a single visit of each gateway
  std::map<std::string, std::size_t> max_fanout;
  // status sequence of every branch lineage (recorded on request)
  std::vector<std::vector<Status>> histories;
};

struct CheckOptions {
  bool record_histories = false;
};

namespace checker_detail {

struct Branch {
  std::vector<bool> visited;      // N
  std::vector<NodeId> active;     // A, in activation order
  Status status = Status::NotConform;
  std::vector<NodeId> trace;
  std::vector<Status> history;
};

enum class Move { Advance, Fork, Wait };

class Search {
 public:
  Search(const ProcessModel& concrete, const Formula& formula, NodeId start, Direction dir,
         const IncarnationMap& map, SearchStats* stats, const CheckOptions& opts)
      : m_(concrete), formula_(formula), n_(start), dir_(dir), stats_(stats), opts_(opts) {
    for (const auto& [c, r] : map.pairs)
      if (auto id = m_.find(c)) incarnations_[r].push_back(*id);
    for (NodeId i = 0; i < m_.size(); ++i) {
      auto k = m_.node(i).kind;
      if (k == (dir_ == Direction::Forward ? NodeKind::EndEvent : NodeKind::StartEvent)) terminals_.push_back(i);
    }
  }

  IncarnationVerdict run() {
    Branch root;
    root.visited.assign(m_.size(), false);
    root.active.push_back(n_);
    // a backtrack is reported starting from the incarnation itself
    if (dir_ == Direction::Backward) root.trace.push_back(n_);
    if (opts_.record_histories) root.history.push_back(root.status);
    if (stats_) {
      ++stats_->searches;
      ++stats_->branches_created;
    }

    std::vector<Branch> branches;
    branches.push_back(std::move(root));
    auto live = [](const std::vector<Branch>& bs) {
      return std::any_of(bs.begin(), bs.end(), [](const Branch& b) { return !b.active.empty(); });
    };
    while (live(branches)) {
      if (stats_) ++stats_->iterations;
      std::vector<Branch> next;
      next.reserve(branches.size());
      for (auto& b : branches) {
        if (b.active.empty()) {
          next.push_back(std::move(b));
          continue;
        }
        step(std::move(b), next);
      }
      branches = std::move(next);
    }
    return verdict(branches);
  }

 private:
  const std::vector<NodeId>& ahead(NodeId x) const {
    return dir_ == Direction::Forward ? m_.successor_ids(x) : m_.predecessor_ids(x);
  }
  const std::vector<NodeId>& behind(NodeId x) const {
    return dir_ == Direction::Forward ? m_.predecessor_ids(x) : m_.successor_ids(x);
  }

  // Splits open alternatives going forward, merges do so going backward.
  Move move_for(NodeId x) const {
    const Node& node = m_.node(x);
    if (node.is_activity()) return Move::Advance;
    bool opening = dir_ == Direction::Forward ? node.is_split() : node.is_merge();
    if (node.logic == GatewayLogic::And) return opening ? Move::Advance : Move::Wait;
    return opening ? Move::Fork : Move::Advance;
  }

  bool holds(const Branch& b) const {
    return evaluate(formula_, [&](std::string_view v) {
      auto it = incarnations_.find(std::string(v));
      if (it == incarnations_.end()) return false;
      return std::any_of(it->second.begin(), it->second.end(), [&](NodeId c) { return b.visited[c]; });
    });
  }

  void update(Branch& b) const {
    Status before = b.status;
    bool sat = holds(b);
    if (b.status == Status::NotConform && sat) b.status = Status::Conform;
    else if (b.status == Status::Conform && !sat) b.status = Status::Unknown;
    if (opts_.record_histories && b.status != before) b.history.push_back(b.status);
  }

  static void activate(Branch& b, NodeId s) {
    if (!b.visited[s]) {
      b.visited[s] = true;
      if (std::find(b.active.begin(), b.active.end(), s) == b.active.end()) b.active.push_back(s);
    }
  }

  void advance(Branch& b, NodeId x) const {
    b.active.erase(std::find(b.active.begin(), b.active.end(), x));
    // the incarnation itself is recorded only when the branch returns to it
    if (m_.node(x).is_activity() && (x != n_ || b.visited[n_])) b.trace.push_back(x);
    for (NodeId s : ahead(x)) activate(b, s);
    update(b);
  }

  // Non-empty subsets of `options`, by size and then lexicographically.
  static std::vector<std::vector<NodeId>> subsets(const std::vector<NodeId>& options, bool singletons_only) {
    std::vector<std::vector<NodeId>> out;
    std::size_t k = options.size();
    std::size_t max_size = singletons_only ? 1 : k;
    for (std::size_t size = 1; size <= max_size; ++size) {
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      for (;;) {
        std::vector<NodeId> s;
        for (auto i : idx) s.push_back(options[i]);
        out.push_back(std::move(s));
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == k - size + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return out;
  }

  void fork(Branch b, NodeId x, std::vector<Branch>& out) {
    std::vector<NodeId> options;
    for (NodeId s : ahead(x))
      if (std::find(options.begin(), options.end(), s) == options.end()) options.push_back(s);
    // only an exclusive split going forward picks exactly one path; backward,
    // tokens from several incoming flows may pass an exclusive merge
    bool exclusive = m_.node(x).logic == GatewayLogic::Xor && dir_ == Direction::Forward;
    auto choices = subsets(options, exclusive);
    if (stats_) {
      stats_->branches_created += choices.size();
      auto& fan = stats_->max_fanout[m_.node(x).name];
      fan = std::max(fan, choices.size());
    }
    for (std::size_t i = 0; i < choices.size(); ++i) {
      Branch child = (i + 1 == choices.size()) ? std::move(b) : b;
      child.active.erase(std::find(child.active.begin(), child.active.end(), x));
      for (NodeId s : choices[i]) activate(child, s);
      update(child);
      settle(std::move(child), out);
    }
  }

  bool completed(const Branch& b) const {
    if (b.visited[n_]) return true;
    return std::any_of(terminals_.begin(), terminals_.end(), [&](NodeId t) { return b.visited[t]; });
  }

  // Branches that ran out of active nodes without reaching an end (or start,
  // going backward) and without returning to the incarnation are dropped.
  void settle(Branch b, std::vector<Branch>& out) {
    if (b.active.empty()) {
      bool keep = completed(b);
      if (stats_) {
        if (keep) ++stats_->branches_completed;
        else ++stats_->branches_deleted;
        if (opts_.record_histories) stats_->histories.push_back(b.history);
      }
      if (!keep) return;
    }
    out.push_back(std::move(b));
  }

  void step(Branch b, std::vector<Branch>& out) {
    const std::vector<NodeId> snapshot = b.active;
    for (NodeId x : snapshot)
      if (move_for(x) == Move::Advance) advance(b, x);

    auto split = std::find_if(b.active.begin(), b.active.end(), [&](NodeId x) { return move_for(x) == Move::Fork; });
    if (split != b.active.end()) {
      NodeId x = *split;
      fork(std::move(b), x, out);
      return;
    }

    // Only synchronising AND gateways left: prefer one whose other side has
    // been fully visited, otherwise take the earliest activated.
    auto only_waiting = [&] {
      return !b.active.empty() &&
             std::all_of(b.active.begin(), b.active.end(), [&](NodeId x) { return move_for(x) == Move::Wait; });
    };
    while (only_waiting()) {
      NodeId pick = b.active.front();
      for (NodeId x : b.active) {
        const auto& other = behind(x);
        if (std::all_of(other.begin(), other.end(), [&](NodeId p) { return b.visited[p]; })) {
          pick = x;
          break;
        }
      }
      advance(b, pick);
    }
    settle(std::move(b), out);
  }

  IncarnationVerdict verdict(const std::vector<Branch>& branches) const {
    IncarnationVerdict v;
    v.concrete = m_.node(n_).name;
    v.direction = dir_;
    auto pick = [&](Status s) -> const Branch* {
      for (const auto& b : branches)
        if (b.status == s) return &b;
      return nullptr;
    };
    if (branches.empty()) {
      v.status = Status::NoCompletedPath;
      return v;
    }
    const Branch* w = pick(Status::NotConform);
    if (!w) w = pick(Status::Unknown);
    if (w) {
      v.status = w->status;
      for (NodeId x : w->trace) v.witness.push_back(m_.node(x).name);
    } else {
      v.status = Status::Conform;
    }
    return v;
  }

  const ProcessModel& m_;
  const Formula& formula_;
  NodeId n_;
  Direction dir_;
  SearchStats* stats_;
  const CheckOptions& opts_;
  std::unordered_map<std::string, std::vector<NodeId>> incarnations_;
  std::vector<NodeId> terminals_;
};

}  // namespace checker_detail

/// Checks one incarnation against the successor formula (Forward) or the
/// predecessor formula (Backward) of its reference element. A constant-true
/// formula is vacuously satisfied and no search is run.
inline IncarnationVerdict check_incarnation(Direction direction, const ProcessModel& concrete, const Formula& formula,
                                            std::string_view incarnation, const IncarnationMap& map,
                                            SearchStats* stats = nullptr, const CheckOptions& opts = {}) {
  NodeId n = concrete.id(incarnation);
  if (!concrete.node(n).is_activity())
    throw std::invalid_argument("'" + std::string(incarnation) + "' is a gateway, not an incarnation");
  IncarnationVerdict v;
  if (formula.is_true()) {
    v.concrete = std::string(incarnation);
    v.direction = direction;
    v.status = Status::Conform;
    v.vacuous = true;
  } else {
    v = checker_detail::Search(concrete, formula, n, direction, map, stats, opts).run();
  }
  v.reference = map.reference_of(incarnation).value_or(std::string(incarnation));
  return v;
}

struct IncarnationResult {
  std::string concrete;
  Status status = Status::Conform;  // combined over both directions
  IncarnationVerdict forward;
  IncarnationVerdict backward;

  friend bool operator==(const IncarnationResult&, const IncarnationResult&) = default;
};

struct ReferenceResult {
  std::string reference;
  Formula predecessor;
  Formula successor;
  bool missing = false;  // no incarnation in the concrete model
  std::vector<IncarnationResult> incarnations;

  friend bool operator==(const ReferenceResult&, const ReferenceResult&) = default;
};

struct ConformanceReport {
  std::string concrete_model;
  std::string reference_model;
  std::string mapping;
  std::vector<ReferenceResult> nodes;  // reference declaration order
  std::vector<std::string> warnings;
  Status overall = Status::Conform;

  /// Concrete incarnations with the given combined status.
  std::vector<std::string> incarnations_with(Status s) const {
    std::vector<std::string> out;
    for (const auto& r : nodes)
      for (const auto& i : r.incarnations)
        if (i.status == s) out.push_back(i.concrete);
    return out;
  }

  std::vector<std::string> non_conforming() const { return incarnations_with(Status::NotConform); }

  /// Unknown and no-completed-path incarnations.
  std::vector<std::string> undecided() const {
    auto out = incarnations_with(Status::Unknown);
    auto more = incarnations_with(Status::NoCompletedPath);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  }

  std::vector<std::string> missing() const {
    std::vector<std::string> out;
    for (const auto& r : nodes)
      if (r.missing) out.push_back(r.reference);
    return out;
  }

  friend bool operator==(const ConformanceReport&, const ConformanceReport&) = default;
};

inline Status combine(Status forward, Status backward) {
  for (Status s : {Status::NotConform, Status::Unknown, Status::NoCompletedPath})
    if (forward == s || backward == s) return s;
  return Status::Conform;
}

inline Status overall_status(const ConformanceReport& r) {
  bool undecided = false;
  for (const auto& n : r.nodes) {
    if (n.missing) return Status::NotConform;
    for (const auto& i : n.incarnations) {
      if (i.status == Status::NotConform) return Status::NotConform;
      if (i.status != Status::Conform) undecided = true;
    }
  }
  return undecided ? Status::Unknown : Status::Conform;
}

/// Checks every reference task/event against its incarnations under `map`.
inline ConformanceReport check_conformance(const ProcessModel& concrete, const ProcessModel& reference,
                                           const IncarnationMap& map, SearchStats* stats = nullptr,
                                           const CheckOptions& opts = {}) {
  require_valid(concrete);
  require_valid(reference);
  ConformanceReport report;
  report.concrete_model = concrete.name();
  report.reference_model = reference.name();
  report.mapping = map.mapping;
  report.warnings = map.warnings;

  for (const auto& r : reference.nodes()) {
    if (!r.is_activity()) continue;
    ReferenceResult rr;
    rr.reference = r.name;
    rr.predecessor = predecessor_formula(reference, r.name);
    rr.successor = successor_formula(reference, r.name);
    auto incs = map.incarnations_of(r.name);
    rr.missing = incs.empty();
    for (const auto& c : incs) {
      IncarnationResult ir;
      ir.concrete = c;
      ir.forward = check_incarnation(Direction::Forward, concrete, rr.successor, c, map, stats, opts);
      ir.backward = check_incarnation(Direction::Backward, concrete, rr.predecessor, c, map, stats, opts);
      ir.status = combine(ir.forward.status, ir.backward.status);
      rr.incarnations.push_back(std::move(ir));
    }
    report.nodes.push_back(std::move(rr));
  }
  report.overall = overall_status(report);
  return report;
}

/// Resolves `mapping` from the concrete model's stereotypes, then checks.
inline ConformanceReport check_conformance(const ProcessModel& concrete, const ProcessModel& reference,
                                           const std::string& mapping, SearchStats* stats = nullptr,
                                           const CheckOptions& opts = {}) {
  require_valid(concrete);
  require_valid(reference);
  return check_conformance(concrete, reference, resolve_mapping(reference, concrete, mapping), stats, opts);
}

}  // namespace wfconf
