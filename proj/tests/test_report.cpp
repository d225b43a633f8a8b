#include <gtest/gtest.h>

#include "support.hpp"

using namespace wfconf;
using namespace wfconf::testing;

namespace {

ConformanceReport report_for(const std::string& concrete, const std::string& reference) {
  return check_conformance(fixture(concrete), fixture(reference), "ref");
}

bool has(const std::string& text, std::string_view needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Bracketed, Lists) {
  EXPECT_EQ(bracketed({}), "[]");
  EXPECT_EQ(bracketed({"a"}), "[a]");
  EXPECT_EQ(bracketed({"a", "b", "c"}), "[a, b, c]");
}

TEST(RenderText, Conform) {
  auto text = render_text(report_for("SequentialWriting.wfm", "PaperAuthoring.wfm"));
  EXPECT_EQ(text,
            "Checking Conformance of [Concrete:SequentialWriting] to [Reference:PaperAuthoring]\n\n"
            "--- Final Result of Conformance Checking ---\n"
            "--- All nodes conform to their reference ---\n");
}

TEST(RenderText, NotConform) {
  auto text = render_text(report_for("AntiPattern.wfm", "PaperAuthoring.wfm"));
  EXPECT_TRUE(has(text, "The following nodes do not conform: [Review]\n"));
  EXPECT_TRUE(has(text, "Result: Node [AntiPattern:Review] does not conform to Node [PaperAuthoring:Review]\n"));
  EXPECT_TRUE(has(text, "Counter example: The following backtrack [Review, Introduction, Evaluate, Implement, "
                        "Expose, LiteratureReview, Start] is possible in [AntiPattern] but not in [PaperAuthoring].\n"));
  EXPECT_FALSE(has(text, "unknown"));
}

TEST(RenderText, Unknown) {
  auto skip = fixture("Skip.wfm");
  auto text = render_text(check_conformance(skip, skip, "ref"));
  EXPECT_TRUE(has(text, "The status of the following nodes is unknown: [A]\n"));
  EXPECT_TRUE(has(text, "Result: Node [Skip:A] may not conform to Node [Skip:A]\n"));
  EXPECT_TRUE(has(text, "but may not be possible in [Skip].\n"));
}

TEST(RenderText, Missing) {
  auto text = render_text(report_for("cases/n02_remove_task.wfm", "PaperAuthoring.wfm"));
  EXPECT_TRUE(has(text, "The following reference nodes have no incarnation: [Conclusion]\n"));
  EXPECT_TRUE(has(text, "has no incarnation in ["));
  EXPECT_TRUE(has(text, "under mapping \"ref\""));
}

TEST(RenderText, EveryFailureExplained) {
  for (const auto& c : corpus()) {
    auto r = check_conformance(load_model(c.concrete), load_model(c.reference), c.mapping);
    auto text = render_text(r);
    EXPECT_EQ(has(text, "Explanations"), r.overall != Status::Conform) << c.name;
    for (const auto& n : r.non_conforming()) EXPECT_TRUE(has(text, ":" + n + "] does not conform")) << c.name;
    for (const auto& n : r.undecided()) EXPECT_TRUE(has(text, ":" + n + "] may not conform")) << c.name;
  }
}

TEST(ExitCode, FollowsOverall) {
  auto skip = fixture("Skip.wfm");
  EXPECT_EQ(exit_code(report_for("SequentialWriting.wfm", "PaperAuthoring.wfm")), 0);
  EXPECT_EQ(exit_code(report_for("AntiPattern.wfm", "PaperAuthoring.wfm")), 1);
  EXPECT_EQ(exit_code(check_conformance(skip, skip, "ref")), 2);
  ConformanceReport r;
  r.overall = Status::NoCompletedPath;
  EXPECT_EQ(exit_code(r), 2);
}

TEST(Json, Shape) {
  auto j = report_json(report_for("AntiPattern.wfm", "PaperAuthoring.wfm"));
  EXPECT_EQ(j["concrete"], "AntiPattern");
  EXPECT_EQ(j["reference"], "PaperAuthoring");
  EXPECT_EQ(j["mapping"], "ref");
  EXPECT_EQ(j["overall"], "not-conform");
  ASSERT_TRUE(j["nodes"].is_array());
  bool found = false;
  for (const auto& n : j["nodes"]) {
    if (n["reference"] != "Review") continue;
    found = true;
    EXPECT_EQ(n["predecessorText"], "Introduction AND Main AND Conclusion");
    EXPECT_EQ(n["predecessor"]["kind"], "and");
    const auto& inc = n["incarnations"].at(0);
    EXPECT_EQ(inc["status"], "not-conform");
    EXPECT_EQ(inc["backward"]["direction"], "backward");
    EXPECT_EQ(inc["backward"]["witness"].size(), 7u);
    EXPECT_EQ(inc["forward"]["status"], "conform");
  }
  EXPECT_TRUE(found);
}

TEST(Json, RoundTripsCorpus) {
  for (const auto& c : corpus()) {
    auto r = check_conformance(load_model(c.concrete), load_model(c.reference), c.mapping);
    auto again = report_from_json(render_json(r));
    EXPECT_EQ(again, r) << c.name;
    EXPECT_EQ(render_text(again), render_text(r)) << c.name;
  }
}

TEST(Json, RejectsMalformed) {
  EXPECT_ANY_THROW(report_from_json("{"));
  EXPECT_ANY_THROW(report_from_json(R"({"concrete": "C"})"));
}
