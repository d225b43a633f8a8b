#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <array>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wfconf/wfconf.hpp"

namespace wfconf::testing {

inline std::filesystem::path corpus_dir() { return WFCONF_CORPUS_DIR; }

inline ProcessModel fixture(const std::string& relative) { return load_model(corpus_dir() / relative); }

inline std::vector<CorpusCase> corpus() { return load_corpus(corpus_dir() / "manifest.ini"); }

/// Every distinct model file referenced by the manifest.
inline std::vector<std::filesystem::path> corpus_models() {
  std::set<std::filesystem::path> seen;
  for (const auto& c : corpus()) {
    seen.insert(c.concrete);
    seen.insert(c.reference);
  }
  return {seen.begin(), seen.end()};
}

/// Reference names of the trace elements that have one.
inline std::set<std::string, std::less<>> project(const std::vector<std::string>& trace, const IncarnationMap& map) {
  std::set<std::string, std::less<>> out;
  for (const auto& t : trace)
    if (auto r = map.reference_of(t)) out.insert(*r);
  return out;
}

/// Syntactically valid model text with random nodes, stereotypes and flows.
/// The result need not pass validate().
inline ProcessModel random_model(std::mt19937& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<Node> nodes;
  std::size_t count = 2 + pick(9);
  for (std::size_t i = 0; i < count; ++i) {
    std::string name = "N" + std::to_string(i);
    switch (pick(4)) {
      case 0: nodes.push_back(Node::start(name)); break;
      case 1: nodes.push_back(Node::end(name)); break;
      case 2: nodes.push_back(Node::task(name)); break;
      default: {
        GatewayLogic logic = std::array{GatewayLogic::And, GatewayLogic::Xor, GatewayLogic::Or}[pick(3)];
        nodes.push_back(Node::gateway(name, logic, pick(2) ? GatewayRole::Split : GatewayRole::Merge));
      }
    }
    if (!nodes.back().is_gateway())
      for (std::string mapping : {"ref", "alt"})
        if (pick(3) == 0) nodes.back().stereotypes.push_back({mapping, "R" + std::to_string(pick(5))});
  }
  std::vector<SequenceFlow> flows;
  std::size_t flow_count = pick(2 * count);
  for (std::size_t i = 0; i < flow_count; ++i) flows.push_back({nodes[pick(count)].name, nodes[pick(count)].name});
  return ProcessModel("Random", std::move(nodes), std::move(flows));
}

/// Sequential model of `tasks` tasks, interrupted by `xor_depth` nested
/// exclusive blocks and `and_blocks` three-way parallel blocks. `or_block`
/// adds a four-way inclusive block with four more tasks right after the last
/// parallel block and leaves everything else unchanged.
class BlockModelBuilder {
 public:
  ProcessModel build(std::size_t tasks, std::size_t xor_depth, std::size_t and_blocks, bool or_block) {
    nodes_ = {Node::start("Start"), Node::end("Done")};
    flows_.clear();
    next_task_ = 0;
    std::string at = "Start";
    auto sequence = [&](std::size_t n) {
      for (std::size_t i = 0; i < n; ++i) at = link(at, new_task());
    };

    std::size_t reserved = 2 * xor_depth + 3 * and_blocks;
    std::size_t filler = tasks > reserved ? tasks - reserved : 0;
    std::size_t gaps = 2 + and_blocks;
    std::size_t per_gap = filler / gaps;

    sequence(per_gap);
    at = nested_xor(at, xor_depth);
    for (std::size_t b = 0; b < and_blocks; ++b) {
      sequence(per_gap);
      at = parallel(at, GatewayLogic::And, 3, "P" + std::to_string(b));
    }
    if (or_block) at = parallel(at, GatewayLogic::Or, 4, "O");
    sequence(filler - per_gap * (gaps - 1));
    link(at, "Done");
    return ProcessModel("Blocks", nodes_, flows_);
  }

 private:
  std::string new_task() {
    std::string name = "T" + std::to_string(++next_task_);
    nodes_.push_back(Node::task(name));
    return name;
  }
  std::string gateway(const std::string& name, GatewayLogic l, GatewayRole r) {
    nodes_.push_back(Node::gateway(name, l, r));
    return name;
  }
  std::string link(const std::string& from, const std::string& to) {
    flows_.push_back({from, to});
    return to;
  }

  // X1 -> {task, X2 -> {task, ...}} with matching merges
  std::string nested_xor(const std::string& from, std::size_t depth) {
    if (depth == 0) return from;
    std::string d = std::to_string(depth);
    std::string split = gateway("X" + d, GatewayLogic::Xor, GatewayRole::Split);
    std::string merge = gateway("Y" + d, GatewayLogic::Xor, GatewayRole::Merge);
    link(from, split);
    link(link(split, new_task()), merge);
    std::string inner = link(split, new_task());
    link(nested_xor(inner, depth - 1), merge);
    return merge;
  }

  std::string parallel(const std::string& from, GatewayLogic l, std::size_t width, const std::string& tag) {
    std::string split = gateway(tag + "s", l, GatewayRole::Split);
    std::string merge = gateway(tag + "m", l, GatewayRole::Merge);
    link(from, split);
    for (std::size_t i = 0; i < width; ++i) link(link(split, new_task()), merge);
    return merge;
  }

  std::vector<Node> nodes_;
  std::vector<SequenceFlow> flows_;
  std::size_t next_task_ = 0;
};

}  // namespace wfconf::testing
