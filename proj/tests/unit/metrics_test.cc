#include "tutorsynth/metrics.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace tutorsynth {
namespace {

ExecutionTrace MakeTrace(const std::string& id, std::size_t beam, double score,
                         std::vector<StepStatus> statuses, bool reached) {
  ExecutionTrace t;
  t.instruction_id = id;
  t.beam_index = beam;
  t.beam_score = score;
  t.reached_final = reached;
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    StepOutcome o;
    o.step_index = i;
    o.status = statuses[i];
    if (o.status == StepStatus::kSkipped) o.reason = std::string(kSkipLookahead);
    if (o.status == StepStatus::kExecuted) o.executed = ExecutedStep{};
    t.outcomes.push_back(std::move(o));
  }
  return t;
}

constexpr auto E = StepStatus::kExecuted;
constexpr auto S = StepStatus::kSkipped;
constexpr auto F = StepStatus::kFailed;

TEST(InstructionStatsTest, ThreeOfFiveIsSixtyPercent) {
  std::vector<ExecutionTrace> t = {MakeTrace("a", 0, 5, {E, E, E, F, S}, false)};
  t[0].outcomes[4].reason = std::string(kSkipNotAttempted);
  auto s = ComputeInstructionStats(t);
  EXPECT_EQ(s.steps_executed, 3);
  EXPECT_EQ(s.total_steps, 5);
  EXPECT_DOUBLE_EQ(s.completion(), 0.6);
}

TEST(InstructionStatsTest, SkipsDoNotCount) {
  std::vector<ExecutionTrace> t = {MakeTrace("a", 0, 5, {E, S, E}, true)};
  auto s = ComputeInstructionStats(t);
  EXPECT_EQ(s.steps_executed, 2);
  EXPECT_TRUE(s.chosen_has_lookahead);
  EXPECT_TRUE(s.chosen_complete);
}

TEST(InstructionStatsTest, ImprovedByBeamSearch) {
  std::vector<ExecutionTrace> t = {
      MakeTrace("a", 0, 5, {E, F, S, S}, false),
      MakeTrace("a", 1, 4, {E, E, E, E}, true),
      MakeTrace("a", 2, 3, {E, E, F, S}, false),
  };
  auto s = ComputeInstructionStats(t);
  EXPECT_TRUE(s.improved_by_bs);
  EXPECT_EQ(s.chosen_beam, 1u);
  EXPECT_EQ(s.steps_executed, 4);
}

TEST(InstructionStatsTest, PrefersHighestScoringCompleteBeam) {
  std::vector<ExecutionTrace> t = {
      MakeTrace("a", 0, 5, {E, E, E}, true),
      MakeTrace("a", 1, 4, {E, E, E, E}, true),
  };
  auto s = ComputeInstructionStats(t);
  EXPECT_EQ(s.chosen_beam, 0u);
  EXPECT_EQ(s.steps_executed, 3);
  // Counted even though the chosen beam is the first.
  EXPECT_TRUE(s.improved_by_bs);
}

TEST(InstructionStatsTest, EmptyThrows) {
  EXPECT_THROW(ComputeInstructionStats({}), std::invalid_argument);
}

TEST(GroupByInstructionTest, ConsecutiveRuns) {
  std::vector<ExecutionTrace> t = {MakeTrace("a", 0, 1, {E}, true),
                                   MakeTrace("a", 1, 1, {E}, true),
                                   MakeTrace("b", 0, 1, {E}, true)};
  auto groups = GroupByInstruction(t);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].size(), 2u);
  EXPECT_EQ(groups[1].front().instruction_id, "b");
  EXPECT_TRUE(GroupByInstruction({}).empty());
}

TEST(AggregateTest, Means) {
  std::vector<InstructionStats> s(2);
  s[0].steps_executed = 3;
  s[0].total_steps = 5;
  s[0].improved_by_bs = true;
  s[1].steps_executed = 4;
  s[1].total_steps = 4;
  s[1].chosen_has_lookahead = true;
  auto row = Aggregate("X", s);
  EXPECT_DOUBLE_EQ(row.mean_steps_executed, 3.5);
  EXPECT_DOUBLE_EQ(row.completion_rate, 0.8);
  EXPECT_EQ(row.tutorials_improved_by_bs, 1);
  EXPECT_EQ(row.tutorials_improved_by_lh, 1);
  EXPECT_EQ(row.instructions, 2u);
  EXPECT_EQ(Aggregate("empty", {}).completion_rate, 0.0);
}

TEST(AblationTest, ConfigOrder) {
  auto c = AblationConfigs();
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].name, "Baseline");
  EXPECT_EQ(c[1].beams, 3);
  EXPECT_TRUE(c[2].lookahead);
  EXPECT_EQ(c[3].name, "BS+LH");
}

class FixtureAblationTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    report_ = new AblationReport(RunAblation(
        LoadCorpus(testing::FixturePath("corpus")), testing::FixtureDevices(),
        ExecConfig{}));
  }
  static void TearDownTestSuite() { delete report_; }
  static AblationReport* report_;
};
AblationReport* FixtureAblationTest::report_ = nullptr;

TEST_F(FixtureAblationTest, CompletionOrdering) {
  const auto& r = report_->rows;
  ASSERT_EQ(r.size(), 4u);
  EXPECT_LT(r[0].completion_rate, r[1].completion_rate);
  EXPECT_LT(r[0].completion_rate, r[2].completion_rate);
  EXPECT_GT(r[3].completion_rate, r[1].completion_rate);
  EXPECT_GT(r[3].completion_rate, r[2].completion_rate);
  EXPECT_GE(r[3].completion_rate - r[0].completion_rate, 0.10);
  EXPECT_EQ(r[0].instructions, 24u);
  EXPECT_TRUE(report_->excluded.empty());
}

TEST_F(FixtureAblationTest, SingleBeamNeverImprovedByBs) {
  EXPECT_EQ(report_->rows[0].tutorials_improved_by_bs, 0);
  EXPECT_EQ(report_->rows[2].tutorials_improved_by_bs, 0);
  EXPECT_GT(report_->rows[1].tutorials_improved_by_bs, 0);
  EXPECT_EQ(report_->rows[0].tutorials_improved_by_lh, 0);
  EXPECT_GT(report_->rows[3].tutorials_improved_by_lh, 0);
}

TEST_F(FixtureAblationTest, TableAndJson) {
  std::string table = report_->FormatTable();
  EXPECT_NE(table.find("Completion Rate"), std::string::npos);
  EXPECT_NE(table.find("BS+LH"), std::string::npos);
  EXPECT_NE(table.find("(24 instructions)"), std::string::npos);
  auto j = report_->ToJson();
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][0]["per_instruction"].size(), 24u);
}

TEST(AblationTest, CleanCorpusIsComplete) {
  auto report = RunAblation(LoadCorpus(testing::FixturePath("corpus_clean")),
                            testing::FixtureDevices(), ExecConfig{});
  for (const auto& row : report.rows) EXPECT_DOUBLE_EQ(row.completion_rate, 1.0);
}

TEST(AblationTest, UnparsableExcludedOnce) {
  DeviceSet devices = {{"pixel_ref", testing::FixtureDevice("pixel_ref")}};
  auto report = RunAblation(LoadCorpus(testing::FixturePath("corpus_small")),
                            devices, ExecConfig{});
  EXPECT_EQ(report.excluded, std::vector<std::string>{"greeting"});
  EXPECT_EQ(report.rows[0].instructions, 4u);
  EXPECT_NE(report.FormatTable().find("1 unparsable excluded"), std::string::npos);
}

}  // namespace
}  // namespace tutorsynth
