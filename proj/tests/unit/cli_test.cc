#include <cstdlib>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "test_util.h"

namespace tutorsynth {
namespace {

namespace fs = std::filesystem;
using testing::FixturePath;
using testing::ScratchDir;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult RunCli(const std::string& args, const fs::path& log_dir) {
  fs::path log = log_dir / "cli.log";
  std::string cmd = std::string("\"") + TUTORSYNTH_CLI_PATH + "\" " + args +
                    " > \"" + log.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = testing::ReadFile(log);
  return r;
}

TEST(CliTest, UnreadableCorpusExitsTwo) {
  ScratchDir dir("cli_missing");
  auto r = RunCli("parse --corpus /nonexistent/corpus --out " +
                      (dir.path() / "out").string(),
                  dir.path());
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("/nonexistent/corpus"), std::string::npos);
}

TEST(CliTest, InvalidDeviceExitsTwo) {
  ScratchDir dir("cli_bad_device");
  std::ofstream(dir.path() / "bad.json") << R"({"id": "bad", "screens": []})";
  auto r = RunCli("pipeline --corpus " + FixturePath("corpus_small").string() +
                      " --device " + (dir.path() / "bad.json").string() +
                      " --out " + (dir.path() / "out").string(),
                  dir.path());
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("screen_size"), std::string::npos);
}

TEST(CliTest, ParseWritesBeams) {
  ScratchDir dir("cli_parse");
  auto r = RunCli("parse --corpus " + FixturePath("corpus").string() +
                      " --beams 3 --out " + dir.path().string(),
                  dir.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto doc = nlohmann::json::parse(
      testing::ReadFile(dir.path() / "parsed/pixel_new__data_saver_done.json"));
  EXPECT_EQ(doc["beams"].size(), 3u);
  auto single = nlohmann::json::parse(
      testing::ReadFile(dir.path() / "parsed/pixel_ref__timer.json"));
  EXPECT_GE(single["beams"].size(), 1u);
}

TEST(CliTest, ParseStrictFailsOnNonInstruction) {
  ScratchDir dir("cli_strict");
  auto r = RunCli("parse --corpus " + FixturePath("corpus_small").string() +
                      " --out " + dir.path().string(),
                  dir.path());
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("greeting"), std::string::npos);
}

TEST(CliTest, PipelineLenientSkipsAndContinues) {
  ScratchDir dir("cli_lenient");
  fs::path out = dir.path() / "out";
  auto r = RunCli("pipeline --lenient --corpus " +
                      FixturePath("corpus_small").string() + " --device " +
                      FixturePath("devices/pixel_ref.json").string() +
                      " --out " + out.string(),
                  dir.path());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("4 bundles written"), std::string::npos) << r.output;
  EXPECT_TRUE(fs::exists(out / "tutorials/battery/tutorial.json"));
  EXPECT_FALSE(fs::exists(out / "tutorials/greeting"));
}

TEST(CliTest, PipelineStrictAborts) {
  ScratchDir dir("cli_pipeline_strict");
  auto r = RunCli("pipeline --corpus " + FixturePath("corpus_small").string() +
                      " --device " + FixturePath("devices/pixel_ref.json").string() +
                      " --out " + (dir.path() / "out").string(),
                  dir.path());
  EXPECT_EQ(r.exit_code, 1) << r.output;
}

TEST(CliTest, AblationWritesMetrics) {
  ScratchDir dir("cli_ablation");
  auto r = RunCli("ablation --corpus " + FixturePath("corpus_clean").string() +
                      " --device " + FixturePath("devices").string() +
                      " --out " + dir.path().string(),
                  dir.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("Completion Rate"), std::string::npos);
  auto doc = nlohmann::json::parse(testing::ReadFile(dir.path() / "metrics.json"));
  EXPECT_EQ(doc["rows"].size(), 4u);
}

TEST(CliTest, UsageErrors) {
  ScratchDir dir("cli_usage");
  EXPECT_NE(RunCli("", dir.path()).exit_code, 0);
  EXPECT_NE(RunCli("pipeline --corpus x", dir.path()).exit_code, 0);
  EXPECT_NE(RunCli("parse --corpus " + FixturePath("corpus_clean").string() +
                       " --beams 0 --out " + dir.path().string(),
                   dir.path()).exit_code,
            0);
}

}  // namespace
}  // namespace tutorsynth
