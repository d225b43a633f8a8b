// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace wfconf;
using namespace wfconf::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "; failed: ";
      else detail << ", ";
      detail << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_ms, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (limit_ms > 0 && ms > limit_ms) out.require(false, "took " + std::to_string(ms) + " ms");
  if (!out.ok) ++failures;
  std::printf("%s [%d] %s (%.1f ms", out.ok ? "PASS" : "FAIL", id, title.c_str(), ms);
  if (limit_ms > 0) std::printf(", limit %.0f ms", limit_ms);
  std::printf(")%s\n", out.detail.str().c_str());
}

void golden_formulas(Outcome& o) {
  auto ref = fixture("PaperAuthoring.wfm");
  auto imc = Formula::conj({Formula::var("Introduction"), Formula::var("Main"), Formula::var("Conclusion")});
  auto draft = successor_formula(ref, "Draft");
  auto review_succ = successor_formula(ref, "Review");
  auto review_pred = predecessor_formula(ref, "Review");
  o.require(draft == imc && draft.to_string() == "Introduction AND Main AND Conclusion", "succ(Draft)");
  o.require(review_succ == Formula::excl({imc, Formula::var("Done")}) &&
                review_succ.to_string() == "(Introduction AND Main AND Conclusion) XOR Done",
            "succ(Review)");
  o.require(review_pred == imc && review_pred.to_string() == "Introduction AND Main AND Conclusion", "pred(Review)");
  o.detail << "; succ(Review) = " << review_succ.to_string();
}

void golden_verdicts(Outcome& o) {
  auto ref = fixture("PaperAuthoring.wfm");

  auto seq = check_conformance(fixture("SequentialWriting.wfm"), ref, "ref");
  o.require(seq.overall == Status::Conform, "SequentialWriting overall");

  auto anti_model = fixture("AntiPattern.wfm");
  auto map = resolve_mapping(ref, anti_model, "ref");
  auto anti = check_conformance(anti_model, ref, map);
  o.require(anti.overall == Status::NotConform, "AntiPattern overall");
  o.require(anti.non_conforming() == std::vector<std::string>{"Review"} && anti.undecided().empty(),
            "AntiPattern non-conform set");
  for (const auto& n : anti.nodes)
    for (const auto& i : n.incarnations)
      if (i.concrete == "Review") {
        const auto& w = i.backward.witness;
        o.require(i.backward.status == Status::NotConform, "Review backward verdict");
        o.require(!w.empty() && w.back() == "Start", "backtrack ends at Start");
        o.require(std::find(w.begin(), w.end(), "Main") == w.end() &&
                      std::find(w.begin(), w.end(), "Conclusion") == w.end(),
                  "backtrack omits Main and Conclusion");
        Trace before(w.begin() + 1, w.end());
        o.require(!evaluate(n.predecessor, project(before, map)), "backtrack violates pred(Review)");
        o.detail << "; backtrack " << bracketed(w);
      }

  auto skip_model = fixture("Skip.wfm");
  auto skip = check_conformance(skip_model, skip_model, "ref");
  o.require(skip.overall == Status::Unknown, "Skip overall");
  o.require(skip.undecided() == std::vector<std::string>{"A"} && skip.non_conforming().empty(), "Skip unknown set");
  for (const auto& n : skip.nodes)
    for (const auto& i : n.incarnations)
      if (i.concrete == "A") {
        const auto& w = i.forward.witness;
        o.require(i.forward.status == Status::Unknown, "A forward verdict");
        o.require(!w.empty() && w.back() == "Done", "run reaches the end");
        std::set<std::string> before(w.begin(), w.end() - (w.empty() ? 0 : 1));
        o.require(before == std::set<std::string>{"B", "C"}, "run projection {B, C}");
        o.detail << ", run " << bracketed(w);
      }
}

bool has_nonempty_witness(const ConformanceReport& r) {
  for (const auto& n : r.nodes)
    for (const auto& i : n.incarnations)
      for (const auto* v : {&i.forward, &i.backward})
        if (v->status == Status::NotConform && !v->witness.empty()) return true;
  return false;
}

void case_study(Outcome& o) {
  int conform = 0, not_conform = 0;
  for (const auto& c : corpus()) {
    bool positive = c.name.size() > 1 && c.name[0] == 'C' && std::isdigit(static_cast<unsigned char>(c.name[1]));
    bool negative = c.name.size() > 1 && c.name[0] == 'N' && std::isdigit(static_cast<unsigned char>(c.name[1]));
    if (!positive && !negative) continue;
    auto r = check_conformance(load_model(c.concrete), load_model(c.reference), c.mapping);
    if (positive) {
      ++conform;
      o.require(r.overall == Status::Conform, c.name + " is " + std::string(to_string(r.overall)));
    } else {
      ++not_conform;
      o.require(r.overall == Status::NotConform, c.name + " is " + std::string(to_string(r.overall)));
      o.require(has_nonempty_witness(r), c.name + " has no witness");
      if (!c.expect_nodes.empty()) o.require(r.non_conforming() == c.expect_nodes, c.name + " node set");
    }
  }
  o.require(conform == 10 && not_conform == 10, "expected 10 + 10 cases");
  o.detail << "; " << conform << " conformant, " << not_conform << " non-conformant cases";
}

void reflexivity(Outcome& o) {
  std::size_t unknown = 0, models = 0;
  for (const auto& path : corpus_models()) {
    auto m = load_model(path);
    auto r = check_conformance(m, m, identity_mapping(m));
    ++models;
    o.require(r.non_conforming().empty() && r.overall != Status::NotConform, m.name());
    unknown += r.undecided().size();
  }
  o.detail << "; " << models << " models, " << unknown << " unknown incarnations";
}

// Does `witness` occur as a subsequence of `t` after some occurrence of `node`?
bool continues_with(const Trace& t, const std::string& node, const std::vector<std::string>& witness) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != node) continue;
    std::size_t k = 0;
    for (std::size_t j = i + 1; j < t.size() && k < witness.size(); ++j)
      if (t[j] == witness[k]) ++k;
    if (k == witness.size()) return true;
  }
  return false;
}

void oracle_soundness(Outcome& o) {
  std::size_t conform_traces = 0, witnesses = 0, unreachable = 0;
  for (const auto& c : corpus()) {
    auto concrete = load_model(c.concrete);
    auto reference = load_model(c.reference);
    auto map = resolve_mapping(reference, concrete, c.mapping);
    auto r = check_conformance(concrete, reference, map);
    auto traces = enumerate_traces(concrete, 2).traces;

    if (r.overall == Status::Conform) {
      for (const auto& t : traces) {
        ++conform_traces;
        if (!trace_permissible(t, reference, map)) {
          o.require(false, c.name + " trace " + bracketed(t));
          break;
        }
      }
    }

    for (const auto& n : r.nodes)
      for (const auto& i : n.incarnations) {
        if (i.forward.status != Status::NotConform) continue;
        bool reachable = std::any_of(traces.begin(), traces.end(), [&](const Trace& t) {
          return std::find(t.begin(), t.end(), i.concrete) != t.end();
        });
        if (!reachable) {
          ++unreachable;
          continue;
        }
        ++witnesses;
        bool refuted = std::any_of(traces.begin(), traces.end(), [&](const Trace& t) {
          return continues_with(t, i.concrete, i.forward.witness) && !trace_permissible(t, reference, map);
        });
        o.require(refuted, c.name + ": no impermissible trace for " + i.concrete);
      }
  }
  o.detail << "; " << conform_traces << " traces of conformant pairs, " << witnesses
           << " forward witnesses confirmed, " << unreachable << " incarnations without a trace at k=2";
}

void complexity(Outcome& o) {
  BlockModelBuilder builder;
  auto base = builder.build(50, 5, 3, false);
  SearchStats s1;
  auto t0 = std::chrono::steady_clock::now();
  auto r1 = check_conformance(base, base, identity_mapping(base), &s1);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  o.require(ms < 5000, "base model took " + std::to_string(ms) + " ms");
  o.require(s1.branches_created < 10000, "base model created " + std::to_string(s1.branches_created) + " branches");
  o.require(r1.overall != Status::NotConform, "base model not reflexive");

  auto with_or = builder.build(50, 5, 3, true);
  SearchStats s2;
  check_conformance(with_or, with_or, identity_mapping(with_or), &s2);
  std::size_t fan_split = s2.max_fanout["Os"], fan_merge = s2.max_fanout["Om"];
  o.require(fan_split <= 15 && fan_merge <= 15, "OR gateway fan-out above 15");
  double ratio = static_cast<double>(s2.branches_created) / static_cast<double>(s1.branches_created);
  o.require(ratio <= 15.0, "total branch growth " + std::to_string(ratio));
  o.detail << "; base " << s1.branches_created << " branches in " << ms << " ms, with OR block "
           << s2.branches_created << " (x" << ratio << "), fan-out split " << fan_split << " merge " << fan_merge;
}

void round_trip(Outcome& o) {
  std::size_t fixtures = 0;
  for (const auto& path : corpus_models()) {
    auto m = load_model(path);
    auto again = parse(print(m));
    o.require(again && structurally_equal(*again.model, m), path.filename().string());
    ++fixtures;
  }
  std::mt19937 rng(20241016);
  for (int i = 0; i < 100; ++i) {
    auto m = random_model(rng);
    auto again = parse(print(m));
    o.require(again && structurally_equal(*again.model, m), "random model " + std::to_string(i));
  }
  o.detail << "; " << fixtures << " fixtures, 100 random models";
}

void status_ladder(Outcome& o) {
  SearchStats stats;
  CheckOptions opts{.record_histories = true};
  for (const auto& c : corpus()) {
    auto concrete = load_model(c.concrete);
    auto reference = load_model(c.reference);
    check_conformance(concrete, reference, c.mapping, &stats, opts);
    check_conformance(concrete, concrete, identity_mapping(concrete), &stats, opts);
  }
  std::size_t transitions = 0;
  for (const auto& h : stats.histories)
    for (std::size_t i = 1; i < h.size(); ++i) {
      ++transitions;
      bool legal = (h[i - 1] == Status::NotConform && h[i] == Status::Conform) ||
                   (h[i - 1] == Status::Conform && h[i] == Status::Unknown);
      if (!legal) {
        o.require(false, std::string(to_string(h[i - 1])) + " -> " + std::string(to_string(h[i])));
        return;
      }
    }
  o.require(!stats.histories.empty(), "no histories recorded");
  o.detail << "; " << stats.histories.size() << " branch lineages, " << transitions << " transitions";
}

}  // namespace

int main() {
  criterion(1, "golden formulas", 100, golden_formulas);
  criterion(2, "golden verdicts", 1000, golden_verdicts);
  criterion(3, "case study: 10 conformant, 10 non-conformant", 10000, case_study);
  criterion(4, "reflexivity on all fixtures", 0, reflexivity);
  criterion(5, "oracle soundness at k=2", 60000, oracle_soundness);
  criterion(6, "complexity smoke test", 0, complexity);
  criterion(7, "parser round trip", 0, round_trip);
  criterion(8, "status ladder", 0, status_ladder);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
