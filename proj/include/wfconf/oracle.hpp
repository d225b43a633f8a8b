#pragma once

// Bounded token-game semantics and the open-world permissibility predicate.
// Test support only: the checker never calls into this header.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"
#include "incarnation.hpp"
#include "model.hpp"
#include "validate.hpp"

namespace wfconf {

using Trace = std::vector<std::string>;

struct TraceEnumeration {
  std::set<Trace> traces;
  std::size_t deadlocked = 0;  // runs stuck with tokens left and nothing enabled
  std::size_t bounded = 0;     // runs cut because some node would fire more than k times
};

namespace oracle_detail {

struct State {
  std::vector<unsigned> tokens;  // per flow
  std::vector<unsigned> fired;   // per node
  Trace trace;
};

class TokenGame {
 public:
  TokenGame(const ProcessModel& m, std::size_t bound) : m_(m), k_(bound) {
    in_.resize(m.size());
    out_.resize(m.size());
    for (std::size_t f = 0; f < m.flows().size(); ++f) {
      const auto& fl = m.flows()[f];
      out_[m.id(fl.source)].push_back(f);
      in_[m.id(fl.target)].push_back(f);
    }
    mark_back_edges();
  }

  TraceEnumeration run() {
    for (NodeId s = 0; s < m_.size(); ++s) {
      if (m_.node(s).kind != NodeKind::StartEvent) continue;
      State st;
      st.tokens.assign(m_.flows().size(), 0);
      st.fired.assign(m_.size(), 0);
      fire_into(st, s, out_[s]);
      explore(st);
    }
    return std::move(result_);
  }

 private:
  bool marked(const State& s, std::size_t flow) const { return s.tokens[flow] > 0; }

  // Returns false when the bound is exceeded.
  bool fire_into(State& s, NodeId x, const std::vector<std::size_t>& outputs) {
    if (++s.fired[x] > k_) return false;
    if (m_.node(x).is_activity()) s.trace.push_back(m_.node(x).name);
    for (auto f : outputs) ++s.tokens[f];
    return true;
  }

  // Flows closing a cycle in a depth-first walk from the start events.
  void mark_back_edges() {
    back_.assign(m_.flows().size(), false);
    enum Color { White, Grey, Black };
    std::vector<Color> color(m_.size(), White);
    for (NodeId s = 0; s < m_.size(); ++s) {
      if (m_.node(s).kind != NodeKind::StartEvent || color[s] != White) continue;
      std::vector<std::pair<NodeId, std::size_t>> stack{{s, 0}};
      color[s] = Grey;
      while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i == out_[x].size()) {
          color[x] = Black;
          stack.pop_back();
          continue;
        }
        std::size_t f = out_[x][i++];
        NodeId t = m_.id(m_.flows()[f].target);
        if (color[t] == Grey) back_[f] = true;
        else if (color[t] == White) {
          color[t] = Grey;
          stack.emplace_back(t, 0);
        }
      }
    }
  }

  // Could a token still reach `target_flow` from any marked flow without
  // passing through `merge`? Loop-back flows are not followed: a token can only
  // come around a loop after the merge has fired.
  bool may_still_arrive(const State& s, NodeId merge, std::size_t target_flow) const {
    std::vector<bool> seen(m_.size(), false);
    std::vector<NodeId> stack;
    for (std::size_t f = 0; f < s.tokens.size(); ++f) {
      if (!marked(s, f)) continue;
      NodeId t = m_.id(m_.flows()[f].target);
      if (t != merge && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (auto f : out_[x]) {
        if (back_[f]) continue;
        if (f == target_flow) return true;
        NodeId t = m_.id(m_.flows()[f].target);
        if (t != merge && !seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    return false;
  }

  // Successor states of firing gateway g; empty if g is not enabled.
  std::vector<State> fire_gateway(const State& s, NodeId g) {
    const Node& node = m_.node(g);
    const auto& in = in_[g];
    const auto& out = out_[g];
    std::vector<State> next;
    auto consume_one = [&](State& t) {
      for (auto f : in)
        if (marked(t, f)) {
          --t.tokens[f];
          return;
        }
    };

    if (node.is_split()) {
      if (!marked(s, in.front())) return next;
      if (node.logic == GatewayLogic::And) {
        next.push_back(s);
        consume_one(next.back());
        emit(next, g, out);
      } else if (node.logic == GatewayLogic::Xor) {
        for (auto f : out) {
          State t = s;
          consume_one(t);
          next.push_back(std::move(t));
          emit(next, g, {f});
        }
      } else {
        std::size_t n = out.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
          std::vector<std::size_t> chosen;
          for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) chosen.push_back(out[i]);
          State t = s;
          consume_one(t);
          next.push_back(std::move(t));
          emit(next, g, chosen);
        }
      }
      return next;
    }

    bool any = std::any_of(in.begin(), in.end(), [&](auto f) { return marked(s, f); });
    if (!any) return next;
    State t = s;
    switch (node.logic) {
      case GatewayLogic::And:
        if (!std::all_of(in.begin(), in.end(), [&](auto f) { return marked(s, f); })) return next;
        for (auto f : in) --t.tokens[f];
        break;
      case GatewayLogic::Xor:
        // tokens pass one at a time; which one goes first is irrelevant
        consume_one(t);
        break;
      case GatewayLogic::Or:
        for (auto f : in)
          if (!marked(s, f) && may_still_arrive(s, g, f)) return next;
        for (auto f : in)
          if (marked(t, f)) --t.tokens[f];
        break;
    }
    next.push_back(std::move(t));
    emit(next, g, out);
    return next;
  }

  void emit(std::vector<State>& next, NodeId g, const std::vector<std::size_t>& outputs) {
    if (!fire_into(next.back(), g, outputs)) {
      ++result_.bounded;
      next.pop_back();
    }
  }

  void explore(const State& s) {
    // Gateways are silent and commute with every other firing, so the first
    // enabled one is fired eagerly instead of interleaving all of them.
    for (NodeId g = 0; g < m_.size(); ++g) {
      if (!m_.node(g).is_gateway()) continue;
      auto next = fire_gateway(s, g);
      bool enabled = !next.empty() || gateway_enabled_but_bounded(s, g);
      if (!enabled) continue;
      for (const auto& t : next) explore(t);
      return;
    }

    bool progressed = false;
    for (NodeId a = 0; a < m_.size(); ++a) {
      const Node& node = m_.node(a);
      if (!node.is_activity() || node.kind == NodeKind::StartEvent) continue;
      if (in_[a].empty() || !marked(s, in_[a].front())) continue;
      progressed = true;
      State t = s;
      --t.tokens[in_[a].front()];
      if (!fire_into(t, a, out_[a])) {
        ++result_.bounded;
        continue;
      }
      explore(t);
    }
    if (progressed) return;

    bool quiet = std::all_of(s.tokens.begin(), s.tokens.end(), [](unsigned c) { return c == 0; });
    if (quiet) result_.traces.insert(s.trace);
    else ++result_.deadlocked;
  }

  // fire_gateway() drops successors that exceed the bound; the gateway was
  // still enabled in that case.
  bool gateway_enabled_but_bounded(const State& s, NodeId g) const { return s.fired[g] >= k_ && enabled(s, g); }

  bool enabled(const State& s, NodeId g) const {
    const Node& node = m_.node(g);
    const auto& in = in_[g];
    if (node.is_split()) return marked(s, in.front());
    bool any = std::any_of(in.begin(), in.end(), [&](auto f) { return marked(s, f); });
    if (!any) return false;
    if (node.logic == GatewayLogic::And)
      return std::all_of(in.begin(), in.end(), [&](auto f) { return marked(s, f); });
    if (node.logic == GatewayLogic::Or)
      for (auto f : in)
        if (!marked(s, f) && may_still_arrive(s, g, f)) return false;
    return true;
  }

  const ProcessModel& m_;
  std::size_t k_;
  std::vector<std::vector<std::size_t>> in_, out_;
  std::vector<bool> back_;
  TraceEnumeration result_;
};

}  // namespace oracle_detail

/// All maximal runs of the token game in which no node fires more than
/// `bound` times, one exploration per start event. Only task and event
/// firings are recorded.
inline TraceEnumeration enumerate_traces(const ProcessModel& model, std::size_t bound = 2) {
  require_valid(model);
  if (bound == 0) throw std::invalid_argument("loop bound must be at least 1");
  return oracle_detail::TokenGame(model, bound).run();
}

/// Open-world permissibility of a concrete trace against a reference model.
///
/// Every occurrence of an incarnation needs its reference element's
/// predecessor formula satisfied by what happened since the previous
/// occurrence of the same concrete node (or since the trace start), and its
/// successor formula satisfied by what happens until the next occurrence (or
/// the trace end). Trace elements without a reference counterpart only count
/// through the projection, which ignores them.
inline bool trace_permissible(const Trace& trace, const ProcessModel& reference, const IncarnationMap& map) {
  std::map<std::string, std::pair<Formula, Formula>> formulas;  // reference -> (pred, succ)
  std::vector<std::optional<std::string>> ref(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    ref[i] = map.reference_of(trace[i]);
    if (ref[i] && !formulas.count(*ref[i]))
      formulas.emplace(*ref[i], std::pair{predecessor_formula(reference, *ref[i]), successor_formula(reference, *ref[i])});
  }

  auto projection = [&](std::size_t from, std::size_t to) {  // [from, to)
    std::set<std::string, std::less<>> out;
    for (std::size_t j = from; j < to; ++j)
      if (ref[j]) out.insert(*ref[j]);
    return out;
  };

  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!ref[i]) continue;
    std::size_t prev = i;
    while (prev > 0 && trace[prev - 1] != trace[i]) --prev;
    std::size_t next = i + 1;
    while (next < trace.size() && trace[next] != trace[i]) ++next;
    const auto& [pred, succ] = formulas.at(*ref[i]);
    if (!evaluate(pred, projection(prev, i))) return false;
    if (!evaluate(succ, projection(i + 1, next))) return false;
  }
  return true;
}

}  // namespace wfconf
